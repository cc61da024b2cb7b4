#include <cmath>
#include <random>

#include <boost/multiprecision/cpp_int.hpp>

#include "doctest.h"
#include "rrl/psp.hpp"

using namespace rrl;
using boost::multiprecision::cpp_rational;

namespace {

struct GaussQ {
  cpp_rational re, im;
};

GaussQ operator+(const GaussQ& a, const GaussQ& b) { return {a.re + b.re, a.im + b.im}; }
GaussQ operator*(const GaussQ& a, const GaussQ& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
GaussQ inverse(const GaussQ& a) {
  cpp_rational n = a.re * a.re + a.im * a.im;
  return {a.re / n, -a.im / n};
}

PoleMeasure single(CirclePoint p, Complex w) {
  PoleMeasure m;
  m.add(p, w);
  return m;
}

// Power series of N(z)/D(z) where D = prod (z - lambda) and
// N = sum rho * prod_{mu != lambda} (z - mu), by long division.
std::vector<std::complex<long double>> long_division(const std::vector<std::complex<long double>>& lam,
                                                     const std::vector<std::complex<long double>>& rho,
                                                     std::size_t terms) {
  using C = std::complex<long double>;
  auto mul_linear = [](std::vector<C> p, C root) {
    p.push_back(0);
    for (std::size_t k = p.size() - 1; k >= 1; --k) p[k] = p[k - 1] - root * p[k];
    p[0] = -root * p[0];
    return p;
  };
  std::vector<C> D{1};
  for (auto l : lam) D = mul_linear(D, l);
  std::vector<C> N(lam.size(), 0);
  for (std::size_t i = 0; i < lam.size(); ++i) {
    std::vector<C> q{1};
    for (std::size_t j = 0; j < lam.size(); ++j) {
      if (j != i) q = mul_linear(q, lam[j]);
    }
    for (std::size_t k = 0; k < q.size(); ++k) N[k] += rho[i] * q[k];
  }
  std::vector<C> out(terms);
  for (std::size_t n = 0; n < terms; ++n) {
    C s = n < N.size() ? N[n] : C{0};
    for (std::size_t k = 1; k <= n && k < D.size(); ++k) s -= D[k] * out[n - k];
    out[n] = s / D[0];
  }
  return out;
}

}  // namespace

TEST_CASE("psp_eval on single poles") {
  CHECK(psp_eval(single(CirclePoint::rational(0, 1), 1.0), 2.0) == Complex(1.0, 0.0));
  CHECK(psp_eval(single(CirclePoint::rational(1, 2), 1.0), 0.0) == Complex(1.0, 0.0));
}

TEST_CASE("uniform measure on fourth roots at z = 2 equals 8/15") {
  GaussQ sum{0, 0};
  const GaussQ i_pows[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  for (const auto& ik : i_pows) sum = sum + inverse(GaussQ{2 - ik.re, -ik.im});
  sum = sum * GaussQ{cpp_rational(1, 4), 0};
  REQUIRE(sum.re == cpp_rational(8, 15));
  REQUIRE(sum.im == 0);

  PoleMeasure m;
  for (int k = 0; k < 4; ++k) m.add(CirclePoint::rational(k, 4), 0.25);
  Complex v = psp_eval(m, 2.0);
  CHECK(v.real() == doctest::Approx(static_cast<double>(sum.re)).epsilon(1e-15));
  CHECK(std::abs(v.imag()) <= 1e-16);
}

TEST_CASE("psp_eval refuses points on a pole") {
  auto m = single(CirclePoint::rational(0, 1), 1.0);
  try {
    psp_eval(m, Complex{1.0, 1e-13});
    FAIL("expected PoleCollision");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PoleCollision);
  }
}

TEST_CASE("duplicate poles and bad weights are rejected") {
  PoleMeasure m;
  m.add(CirclePoint::rational(1, 3), 1.0);
  CHECK_THROWS_AS(m.add(CirclePoint::rational(2, 6), 2.0), Error);
  CHECK_THROWS_AS(m.add(CirclePoint::rational(1, 5), Complex(std::nan(""), 0.0)), Error);
}

TEST_CASE("taylor coefficients of single poles") {
  auto one = single(CirclePoint::rational(0, 1), 1.0);
  for (auto b : taylor_inner(one, 20)) CHECK(b == Complex(-1.0, 0.0));
  for (auto b : taylor_outer(one, 20)) CHECK(b == Complex(-1.0, 0.0));

  auto half = single(CirclePoint::rational(1, 2), 1.0);
  auto in = taylor_inner(half, 20);
  for (std::size_t n = 0; n < in.size(); ++n) CHECK(in[n] == Complex(n % 2 ? -1.0 : 1.0, 0.0));
  auto out = taylor_outer(half, 2);
  CHECK(out[0] == Complex(-1.0, 0.0));
  CHECK(out[1] == Complex(1.0, 0.0));
}

TEST_CASE("taylor_inner matches long division on small exact measures") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    std::int64_t q = 2 + static_cast<std::int64_t>(rng() % 11);
    std::size_t d = 1 + rng() % std::min<std::uint64_t>(3, static_cast<std::uint64_t>(q));
    PoleMeasure m;
    std::vector<std::complex<long double>> lam, rho;
    while (m.size() < d) {
      std::int64_t p = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(q));
      auto pt = CirclePoint::rational(p, q);
      bool seen = false;
      for (const auto& a : m.atoms()) seen = seen || a.point == pt;
      if (seen) continue;
      Complex w{static_cast<double>(rng() % 9) / 8.0 - 0.5, static_cast<double>(rng() % 5) / 4.0};
      if (w == Complex{}) w = 1.0;
      m.add(pt, w);
      long double ang = 2.0L * 3.14159265358979323846264338327950288L * p / q;
      lam.emplace_back(std::cos(ang), std::sin(ang));
      rho.emplace_back(w.real(), w.imag());
    }
    auto want = long_division(lam, rho, 40);
    auto got = taylor_inner(m, 39);
    for (std::size_t n = 0; n < 40; ++n) {
      CHECK(std::abs(got[n] - Complex(static_cast<double>(want[n].real()), static_cast<double>(want[n].imag()))) <=
            1e-10);
    }
  }
}

TEST_CASE("partial sums converge to psp_eval inside and outside") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    PoleMeasure m;
    for (int k = 0; k < 5; ++k) {
      try {
        m.add(CirclePoint::real(u(rng)), Complex{u(rng) - 0.5, u(rng) - 0.5});
      } catch (const Error&) {
      }
    }
    for (double r : {0.5, 2.0, 3.0}) {
      Complex z = std::polar(r, kTwoPi * u(rng));
      Complex exact = psp_eval(m, z);
      for (std::size_t N : {10u, 40u, 200u}) {
        Evaluation e = r < 1.0 ? inner_partial_sum(m, z, N) : outer_partial_sum(m, z, N);
        CHECK(std::abs(e.value - exact) <= e.bound + 1e-10);
      }
    }
  }
}

TEST_CASE("tail mass widens the partial-sum bound") {
  auto m = single(CirclePoint::rational(0, 1), 1.0);
  double b0 = inner_partial_sum(m, 0.5, 10).bound;
  m.set_tail_mass(0.1);
  CHECK(inner_partial_sum(m, 0.5, 10).bound > b0);
}

TEST_CASE("recover_residue") {
  std::vector<double> radii{0.9, 0.99, 0.999, 0.9999, 0.99999, 0.999999};
  auto one = single(CirclePoint::rational(0, 1), 1.0);
  auto est = recover_residue(psp_evaluator(one), CirclePoint::rational(0, 1), radii);
  for (auto t : est.trace) CHECK(std::abs(t - Complex(1.0, 0.0)) <= 1e-15);

  auto off = recover_residue(psp_evaluator(one), CirclePoint::rational(1, 3), radii);
  CHECK(std::abs(off.estimate) <= 1e-5);

  PoleMeasure two;
  two.add(CirclePoint::rational(0, 1), 1.0);
  two.add(CirclePoint::rational(1, 2), 2.0);
  auto r2 = recover_residue(psp_evaluator(two), CirclePoint::rational(1, 2), radii);
  CHECK(std::abs(r2.estimate - Complex(2.0, 0.0)) <= 1e-4);
}

TEST_CASE("recover_residue error shrinks along the trace") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> radii{0.9, 0.99, 0.999, 0.9999, 0.99999};
  for (int trial = 0; trial < 20; ++trial) {
    PoleMeasure m;
    for (int k = 0; k < 6; ++k) m.add(CirclePoint::rational(k, 6), Complex{u(rng), u(rng)});
    for (const auto& a : m.atoms()) {
      auto est = recover_residue(psp_evaluator(m), a.point, radii);
      CHECK(std::abs(est.trace.back() - a.weight) < std::abs(est.trace.front() - a.weight));
    }
  }
}

TEST_CASE("recover_residue failure modes") {
  std::vector<double> radii{0.9, 0.99, 0.999};
  Evaluator wobbly = [](Complex z) { return std::cos(1.0 / (1.0 - std::abs(z))) / (z - 1.0); };
  try {
    recover_residue(wobbly, CirclePoint::rational(0, 1), radii);
    FAIL("expected NonConvergent");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonConvergent);
  }
  Evaluator broken = [](Complex) -> Complex { throw std::runtime_error("no"); };
  try {
    recover_residue(broken, CirclePoint::rational(0, 1), radii);
    FAIL("expected EvalFailure");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EvalFailure);
  }
  std::vector<double> bad{0.5, 0.4};
  CHECK_THROWS_AS(recover_residue(broken, CirclePoint::rational(0, 1), bad), Error);
  std::vector<double> too_close{0.5, 1.0 - 1e-9};
  CHECK_THROWS_AS(recover_residue(broken, CirclePoint::rational(0, 1), too_close), Error);
}

TEST_CASE("fourier_psp") {
  std::vector<std::pair<std::int64_t, Complex>> c{{0, Complex(0.7, -0.2)}};
  auto m0 = fourier_psp(c, std::sqrt(2.0) - 1.0);
  REQUIRE(m0.size() == 1);
  CHECK(m0.atoms()[0].point == CirclePoint::rational(0, 1));
  CHECK(m0.atoms()[0].weight == Complex(-0.7, 0.2));
  for (auto b : taylor_inner(m0, 10)) CHECK(std::abs(b - Complex(0.7, -0.2)) <= 1e-15);

  const double theta = std::sqrt(2.0) - 1.0;
  std::vector<std::pair<std::int64_t, Complex>> cosine{{1, 0.5}, {-1, 0.5}};
  auto mc = fourier_psp(cosine, theta);
  auto b = taylor_inner(mc, 300);
  for (std::size_t n = 0; n < b.size(); ++n) {
    CHECK(std::abs(b[n] - std::cos(kTwoPi * static_cast<double>(n) * theta)) <= 1e-12);
  }

  std::vector<std::pair<std::int64_t, Complex>> one{{1, 1.0}};
  auto m1 = fourier_psp(one, 0.25);
  REQUIRE(m1.size() == 1);
  CHECK(m1.atoms()[0].point.turns() == 0.75);

  std::vector<std::pair<std::int64_t, Complex>> clash{{1, 1.0}, {5, 1.0}};
  try {
    fourier_psp(clash, 0.25);
    FAIL("expected DuplicatePole");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DuplicatePole);
  }
}

TEST_CASE("measure summaries") {
  PoleMeasure m;
  m.add(CirclePoint::rational(1, 4), Complex(3.0, 4.0));
  m.add(CirclePoint::rational(1, 6), -1.0);
  CHECK(m.total_mass() == 6.0);
  CHECK(m.all_exact());
  CHECK(m.common_order() == 12);
  CHECK(m.max_order() == 6);
  CHECK(m.largest_gap() == doctest::Approx(1.0 - 1.0 / 4 + 1.0 / 6));
  m.add(CirclePoint::real(0.5123), 1.0);
  CHECK_FALSE(m.all_exact());
  CHECK(m.common_order() == 0);
}
