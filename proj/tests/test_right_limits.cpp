#include <cmath>
#include <random>
#include <set>

#include "doctest.h"
#include "rrl/diophantine.hpp"
#include "rrl/dynamics.hpp"
#include "rrl/right_limits.hpp"

using namespace rrl;

namespace {

const double kGolden = (std::sqrt(5.0) - 1.0) / 2.0;

long double frac_ld(long double x) { return x - std::floor(x); }

PoleMeasure roots_measure(std::int64_t q) {
  PoleMeasure m;
  for (std::int64_t k = 0; k < q; ++k) m.add(CirclePoint::rational(k, q), Complex(1.0 / q, 0.0));
  return m;
}

}  // namespace

TEST_CASE("periodic parity stream, tol = 0") {
  auto s = CoeffStream::periodic({0.0, 1.0});
  auto rep = renascent_shift_search(s, 5, 20, 0.0);
  CHECK(rep.shifts() == std::vector<std::uint64_t>{6, 8, 10, 12, 14, 16, 18, 20});
  for (const auto& e : rep.entries) {
    for (std::int64_t n = -5; n < 0; ++n) CHECK(e.window.at(n).real() == static_cast<double>(((n % 2) + 2) % 2));
    CHECK(e.residual_pos == 0.0);
  }
}

TEST_CASE("periodic streams return exactly the multiples of the period") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t p = 1 + rng() % 7;
    std::vector<Complex> period;
    for (std::size_t i = 0; i < p; ++i) period.emplace_back(static_cast<double>(i), 0.0);
    auto s = CoeffStream::periodic(period);
    std::size_t W = 1 + rng() % 6;
    std::uint64_t K = W + 1 + rng() % 80;
    auto rep = renascent_shift_search(s, W, K, 0.0);
    std::vector<std::uint64_t> want;
    for (std::uint64_t k = W + 1; k <= K; ++k) {
      if (k % p == 0) want.push_back(k);
    }
    CHECK(rep.shifts() == want);
  }
}

TEST_CASE("preperiodic stream has no renascent shift") {
  auto s = CoeffStream::preperiodic({5.0}, {0.0, 1.0});
  auto rep = renascent_shift_search(s, 2, 100, 1e-9);
  CHECK(rep.entries.empty());
}

TEST_CASE("golden Hecke stream: shifts agree with a direct scan") {
  const double tol = 1e-2;
  auto s = hecke_stream(kGolden);
  auto rep = renascent_shift_search(s, 10, 10000, tol);
  REQUIRE_FALSE(rep.entries.empty());
  auto shifts = rep.shifts();
  std::set<std::uint64_t> got(shifts.begin(), shifts.end());
  // Convergent denominators with {k theta} just above 0 are shifts; those just
  // below 1 are not, since a_k - a_0 is then close to 1.
  CHECK(got.count(233) == 1);
  CHECK(got.count(610) == 1);
  CHECK(got.count(1597) == 1);
  CHECK(got.count(377) == 0);
  const long double th = kGolden;
  for (std::uint64_t k = 11; k <= 10000; ++k) {
    long double worst = 0, margin = 1;
    for (int n = 0; n <= 10; ++n) {
      long double d = std::fabs(frac_ld((n + static_cast<long double>(k)) * th) - frac_ld(n * th));
      worst = std::max(worst, d);
      margin = std::min(margin, std::fabs(d - tol));
    }
    if (margin < 1e-9) continue;
    CHECK_MESSAGE((worst <= tol) == (got.count(k) == 1), "k = " << k);
  }
  for (auto k : got) {
    double f = frac_mul(static_cast<std::int64_t>(k), kGolden);
    CHECK(f <= tol + 1e-12);
  }
}

TEST_CASE("search is monotone in tol and W") {
  auto s = hecke_stream(std::sqrt(2.0) - 1.0);
  auto base = renascent_shift_search(s, 8, 20000, 1e-2).shifts();
  auto tighter = renascent_shift_search(s, 8, 20000, 5e-3).shifts();
  auto wider = renascent_shift_search(s, 16, 20000, 1e-2).shifts();
  std::set<std::uint64_t> b(base.begin(), base.end());
  for (auto k : tighter) CHECK(b.count(k) == 1);
  for (auto k : wider) CHECK(b.count(k) == 1);
  CHECK(tighter.size() <= base.size());
}

TEST_CASE("shift search validates its inputs") {
  auto s = CoeffStream::constant(1.0);
  CHECK_THROWS_AS(renascent_shift_search(s, 0, 10, 0.1), Error);
  CHECK_THROWS_AS(renascent_shift_search(s, 5, 5, 0.1), Error);
  CHECK_THROWS_AS(renascent_shift_search(s, 5, 50, -1.0), Error);
}

TEST_CASE("streams check their bound") {
  CoeffStream bad("bad", [](std::uint64_t k) { return Complex(static_cast<double>(k), 0.0); }, 3.0);
  CHECK_THROWS_AS(bad.materialize(10), Error);
  CoeffStream ok("ok", [](std::uint64_t) { return Complex(1.0, 0.0); }, 1.0);
  ok.materialize(10);
  CHECK(ok.materialized() == 10);
}

TEST_CASE("window_cluster counts continuations") {
  auto one = CoeffStream::constant(1.0);
  auto r1 = renascent_shift_search(one, 4, 40, 1e-9);
  auto c1 = window_cluster(r1, 1e-9);
  REQUIRE(c1.clusters.size() == 1);
  for (auto v : c1.clusters[0].representative.values) CHECK(v == Complex(1.0, 0.0));

  auto hecke = hecke_stream(kGolden);
  auto rh = renascent_shift_search(hecke, 10, 100000, 5e-3);
  CHECK(window_cluster(rh, 5e-3).clusters.size() == 1);

  auto shifted = hecke_stream(kGolden, kGolden);
  auto rs = renascent_shift_search(shifted, 10, 100000, 5e-3);
  auto cs = window_cluster(rs, 5e-3);
  REQUIRE(cs.clusters.size() == 2);
  const auto& a = cs.clusters[0].representative;
  const auto& b = cs.clusters[1].representative;
  CHECK(std::abs(std::abs(a.at(-1).real() - b.at(-1).real()) - 1.0) <= 1e-2);
  for (std::int64_t n = -10; n < -1; ++n) CHECK(std::abs(a.at(n) - b.at(n)) <= 1e-2);
  std::size_t members = 0;
  for (const auto& c : cs.clusters) members += c.members;
  CHECK(members == rs.entries.size());
  CHECK(cs.assignment.size() == rs.entries.size());

  ShiftReport empty;
  CHECK_THROWS_AS(window_cluster(empty, 1e-3), Error);
}

TEST_CASE("window generating functions approximate the measure") {
  auto m = roots_measure(4);
  auto s = CoeffStream::from_measure(m);
  auto rep = renascent_shift_search(s, 32, 40, 0.0);
  REQUIRE_FALSE(rep.entries.empty());
  auto gp = generating_functions(rep.entries.front().window);
  for (Complex z : {Complex(2.0, 0.0), Complex(0.0, 3.0)}) {
    auto e = gp.outer(z);
    CHECK(std::abs(e.value - psp_eval(m, z)) <= e.bound + 1e-14);
  }
  for (Complex z : {Complex(0.5, 0.0), Complex(-0.3, 0.4)}) {
    auto e = gp.inner(z);
    CHECK(std::abs(e.value - psp_eval(m, z)) <= e.bound + 1e-14);
  }
}

TEST_CASE("verify_rrl_on_psp") {
  auto r4 = roots_measure(4);
  auto t = verify_rrl_on_psp(r4, {BigInt(24), BigInt(120)}, 32);
  CHECK(t.exact);
  for (const auto& row : t.rows) {
    CHECK(row.residual_neg == 0.0);
    CHECK(row.residual_pos == 0.0);
  }

  PoleMeasure single;
  single.add(CirclePoint::rational(0, 1), Complex(0.3, 0.1));
  for (const auto& row : verify_rrl_on_psp(single, {BigInt(1), BigInt(7), BigInt(1000)}, 8).rows) {
    CHECK(row.residual() == 0.0);
  }

  PoleMeasure irr;
  irr.add(CirclePoint::real(std::sqrt(2.0) - 1.0), 1.0);
  std::vector<CirclePoint> pts{irr.atoms()[0].point};
  for (unsigned j = 2; j <= 8; ++j) {
    auto k = pigeonhole_shift(pts, j);
    auto row = verify_rrl_on_psp(irr, {BigInt(k)}, 16).rows.front();
    CHECK(row.residual() <= irr.total_mass() * kTwoPi / j);
  }

  CHECK_THROWS_AS(verify_rrl_on_psp(r4, {BigInt(5), BigInt(3)}, 4), Error);
  CHECK_THROWS_AS(verify_rrl_on_psp(r4, {BigInt(0)}, 4), Error);
}

TEST_CASE("exact measures have zero residual at their common order") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    PoleMeasure m;
    std::size_t d = 1 + rng() % 5;
    while (m.size() < d) {
      std::int64_t q = 1 + static_cast<std::int64_t>(rng() % 12);
      auto p = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(q));
      try {
        m.add(CirclePoint::rational(p, q), Complex(static_cast<double>(rng() % 7) + 1.0, 0.5));
      } catch (const Error&) {
      }
    }
    std::int64_t Q = m.common_order();
    auto t = verify_rrl_on_psp(m, {BigInt(Q), BigInt(Q) * 1000003}, 12);
    for (const auto& row : t.rows) CHECK(row.residual() == 0.0);
  }
}
