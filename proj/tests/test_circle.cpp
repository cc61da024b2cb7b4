#include <cmath>
#include <random>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "doctest.h"
#include "rrl/circle.hpp"

using namespace rrl;
using Wide = boost::multiprecision::cpp_bin_float_100;

namespace {

// {k t} in 100-digit arithmetic.
double wide_frac(const BigInt& k, double t) {
  Wide x = Wide(k) * Wide(t);
  Wide f = x - boost::multiprecision::floor(x);
  return static_cast<double>(f);
}

}  // namespace

TEST_CASE("frac_mul agrees with wide arithmetic") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ud(-3.0, 3.0);
  std::uniform_int_distribution<std::int64_t> kd(-(std::int64_t{1} << 62), std::int64_t{1} << 62);
  for (int i = 0; i < 2000; ++i) {
    double t = ud(rng);
    std::int64_t k = kd(rng);
    double want = wide_frac(BigInt(k), t);
    double got = frac_mul(k, t);
    double d = std::abs(got - want);
    CHECK(std::min(d, 1.0 - d) <= 1e-15);
    CHECK(got >= 0.0);
    CHECK(got < 1.0);
  }
}

TEST_CASE("frac_mul handles factorial-sized shifts") {
  BigInt f = 1;
  for (int j = 1; j <= 40; ++j) f *= j;
  double t = std::sqrt(2.0) - 1.0;
  double d = std::abs(frac_mul(f, t) - wide_frac(f, t));
  CHECK(std::min(d, 1.0 - d) <= 1e-15);
  // An exactly representable dyadic angle is annihilated by 40!.
  CHECK(frac_mul(f, 0.375) == 0.0);
}

TEST_CASE("rational points are stored reduced in [0,1)") {
  auto a = CirclePoint::rational(2, 4);
  CHECK(a.numerator() == 1);
  CHECK(a.denominator() == 2);
  auto b = CirclePoint::rational(-1, 4);
  CHECK(b.numerator() == 3);
  CHECK(b.denominator() == 4);
  auto c = CirclePoint::rational(7, 3);
  CHECK(c.numerator() == 1);
  CHECK(c.denominator() == 3);
  CHECK_THROWS_AS(CirclePoint::rational(1, 0), Error);
}

TEST_CASE("quarter turns are exact") {
  CHECK(CirclePoint::rational(0, 1).value() == Complex(1.0, 0.0));
  CHECK(CirclePoint::rational(1, 4).value() == Complex(0.0, 1.0));
  CHECK(CirclePoint::rational(1, 2).value() == Complex(-1.0, 0.0));
  CHECK(CirclePoint::rational(3, 4).value() == Complex(0.0, -1.0));
}

TEST_CASE("powers of exact points follow p k mod q") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    std::int64_t q = 1 + static_cast<std::int64_t>(rng() % 200);
    std::int64_t p = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(q));
    std::int64_t k = static_cast<std::int64_t>(rng() % 100000) - 50000;
    auto pk = CirclePoint::rational(p, q).power(k);
    REQUIRE(pk.is_exact());
    std::int64_t r = ((p * k) % q + q) % q;
    CHECK(pk == CirclePoint::rational(r, q));
  }
  BigInt f = 1;
  for (int j = 1; j <= 30; ++j) f *= j;
  CHECK(CirclePoint::rational(5, 7).power(f) == CirclePoint::rational(0, 1));
}

TEST_CASE("real points power through frac_mul") {
  auto l = CirclePoint::real(std::sqrt(3.0) - 1.0);
  auto p = l.power(std::int64_t{12345});
  CHECK_FALSE(p.is_exact());
  CHECK(p.turns() == doctest::Approx(wide_frac(BigInt(12345), std::sqrt(3.0) - 1.0)).epsilon(1e-14));
}

TEST_CASE("roots of unity and distinct sorting") {
  auto r = roots_of_unity(6);
  REQUIRE(r.size() == 6);
  for (std::size_t k = 0; k < 6; ++k) CHECK(r[k] == CirclePoint::rational(static_cast<std::int64_t>(k), 6));
  std::vector<CirclePoint> pts{CirclePoint::rational(1, 2), CirclePoint::rational(1, 4), CirclePoint::rational(2, 4)};
  CHECK_THROWS_AS(sort_distinct(pts, ErrorCode::DuplicatePole), Error);
  try {
    sort_distinct(pts, ErrorCode::DuplicateRoot);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DuplicateRoot);
  }
}
