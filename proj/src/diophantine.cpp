#include "rrl/diophantine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <unordered_map>

#include "rrl/cyclotomic.hpp"

namespace rrl {

CPoly::CPoly(std::vector<Complex> coeffs) : c_(std::move(coeffs)) {
  while (!c_.empty() && c_.back() == Complex{}) c_.pop_back();
}

Complex CPoly::operator()(Complex x) const {
  Complex s{};
  for (std::size_t i = c_.size(); i-- > 0;) s = s * x + c_[i];
  return s;
}

CPoly CPoly::derivative() const {
  if (c_.size() <= 1) return CPoly{};
  std::vector<Complex> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = static_cast<double>(i) * c_[i];
  return CPoly(std::move(d));
}

double CPoly::one_norm() const {
  double s = 0.0;
  for (auto c : c_) s += std::abs(c);
  return s;
}

std::vector<BigInt> factorial_shifts(unsigned j_max) {
  require(j_max >= 1, "factorial_shifts: j_max must be >= 1");
  std::vector<BigInt> out;
  out.reserve(j_max);
  BigInt f = 1;
  for (unsigned j = 1; j <= j_max; ++j) {
    f *= j;
    out.push_back(f);
  }
  return out;
}

namespace {

constexpr double kSnap = 1e-13;

// floor(j * {x}) with values within kSnap of the next cell boundary moved up.
std::uint64_t snapped_cell(double f, std::uint64_t j) {
  double c = static_cast<double>(j) * f;
  double up = std::ceil(c);
  if (up - c < kSnap) c = up;
  auto cell = static_cast<std::uint64_t>(std::floor(c));
  return cell >= j ? 0 : cell;  // a fractional part snapped to 1 is 0
}

// {k * angle} * j < 1, i.e. lambda^k lies in the arc [0, 1/j) turns.
bool in_first_cell(const CirclePoint& lam, std::uint64_t k, unsigned j) {
  if (lam.is_exact()) {
    __int128 r = (static_cast<__int128>(lam.numerator()) * k) % lam.denominator();
    return static_cast<__int128>(j) * r < lam.denominator();
  }
  return static_cast<double>(j) * frac_mul(static_cast<std::int64_t>(k), lam.turns()) < 1.0;
}

std::uint64_t cell_of(const CirclePoint& lam, std::uint64_t m, unsigned j) {
  if (lam.is_exact()) {
    __int128 r = (static_cast<__int128>(lam.numerator()) * m) % lam.denominator();
    return static_cast<std::uint64_t>((static_cast<__int128>(j) * r) / lam.denominator());
  }
  return snapped_cell(frac_mul(static_cast<std::int64_t>(m), lam.turns()), j);
}

std::uint64_t ipow_capped(std::uint64_t b, std::size_t e, std::uint64_t cap) {
  __int128 r = 1;
  for (std::size_t i = 0; i < e; ++i) {
    r *= b;
    if (r > cap) return cap + 1;
  }
  return static_cast<std::uint64_t>(r);
}

}  // namespace

std::uint64_t pigeonhole_shift(std::span<const CirclePoint> lambdas, unsigned j, unsigned j_cap) {
  require(j >= 1, "pigeonhole_shift: j must be >= 1");
  require(!lambdas.empty(), "pigeonhole_shift: no points");
  if (j > j_cap) fail(ErrorCode::CapExceeded, "pigeonhole_shift: j exceeds the configured cap");
  std::size_t d = std::min<std::size_t>(j, lambdas.size());
  auto pts = lambdas.first(d);

  const std::uint64_t cells = ipow_capped(j, d, std::uint64_t{1} << 40);
  const std::uint64_t budget = std::min<std::uint64_t>(64 * (cells + 1), 50'000'000);

  std::unordered_map<std::uint64_t, std::vector<std::uint64_t>> seen;
  for (std::uint64_t m = 0; m <= budget; ++m) {
    std::uint64_t key = 0;
    for (std::size_t r = 0; r < d; ++r) key = key * j + cell_of(pts[r], m, j);
    auto& bucket = seen[key];
    for (std::uint64_t m0 : bucket) {
      std::uint64_t k = m - m0;
      bool ok = std::all_of(pts.begin(), pts.end(),
                            [&](const CirclePoint& lam) { return in_first_cell(lam, k, j); });
      if (ok) return k;
    }
    bucket.push_back(m);
  }
  fail(ErrorCode::CapExceeded, "pigeonhole_shift: no admissible collision within the scan budget");
}

namespace {

struct NearestInt {
  std::int64_t p;
  double err;
};

NearestInt nearest_multiple(std::uint64_t N, double theta) {
  double f = frac_mul(static_cast<std::int64_t>(N), theta);
  if (1.0 - f < kSnap) f = 0.0;
  long double whole = static_cast<long double>(N) * static_cast<long double>(theta) - f;
  auto fl = static_cast<std::int64_t>(std::llround(whole));
  if (f <= 0.5) return {fl, f};
  return {fl + 1, 1.0 - f};
}

}  // namespace

DirichletApprox dirichlet_approx(std::span<const double> thetas, std::uint64_t M) {
  require(!thetas.empty(), "dirichlet_approx: no angles");
  require(M >= 1 && M <= (std::uint64_t{1} << 32), "dirichlet_approx: M out of range");
  for (double t : thetas) require(std::isfinite(t), "dirichlet_approx: angles must be finite");
  const std::size_t m = thetas.size();

  std::uint64_t Q = static_cast<std::uint64_t>(std::floor(std::pow(static_cast<double>(M), 1.0 / m)));
  Q = std::max<std::uint64_t>(Q, 1);
  while (ipow_capped(Q + 1, m, M) <= M) ++Q;
  while (Q > 1 && ipow_capped(Q, m, M) > M) --Q;

  DirichletApprox out;
  out.bound = std::pow(static_cast<double>(M), -1.0 / static_cast<double>(m));
  const double accept = out.bound * (1.0 + 1e-12) + 1e-15;

  auto try_N = [&](std::uint64_t N) {
    DirichletApprox cand;
    cand.N = N;
    cand.bound = out.bound;
    for (double t : thetas) {
      auto [p, err] = nearest_multiple(N, t);
      cand.p.push_back(p);
      cand.max_error = std::max(cand.max_error, err);
    }
    return cand;
  };

  std::unordered_map<std::uint64_t, std::uint64_t> first;
  first.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(M + 1, 1 << 20)));
  for (std::uint64_t n = 0; n <= M; ++n) {
    std::uint64_t key = 0;
    for (double t : thetas) {
      double f = frac_mul(static_cast<std::int64_t>(n), t);
      if (1.0 - f < kSnap) f = 0.0;
      key = key * Q + snapped_cell(f, Q);
    }
    auto [it, inserted] = first.emplace(key, n);
    if (inserted) continue;
    auto cand = try_N(n - it->second);
    if (cand.max_error <= accept) {
      cand.by_pigeonhole = true;
      return cand;
    }
    break;
  }
  // M is not a perfect m-th power (or rounding bit): the lattice-point
  // theorem still guarantees a solution, found by direct scan.
  for (std::uint64_t N = 1; N <= M; ++N) {
    auto cand = try_N(N);
    if (cand.max_error <= accept) {
      cand.by_pigeonhole = false;
      return cand;
    }
  }
  fail(ErrorCode::CapExceeded, "dirichlet_approx: no approximation found");
}

namespace {

// Product of (X - mu) over exact points in Z[zeta_L].
struct ExactProduct {
  CyclotomicRing ring;
  std::vector<CyclotomicRing::Elem> coeffs;
};

std::int64_t lcm_of_orders(std::span<const CirclePoint> F) {
  __int128 l = 1;
  for (const auto& p : F) {
    if (!p.is_exact()) return 0;
    std::int64_t q = p.denominator();
    l = l / std::gcd(static_cast<std::int64_t>(l), q) * q;
    if (l > (1 << 24)) return 0;
  }
  return static_cast<std::int64_t>(l);
}

std::optional<ExactProduct> exact_product(std::span<const CirclePoint> F) {
  std::int64_t L = lcm_of_orders(F);
  if (L == 0 || !exact_product_feasible(L, F.size())) return std::nullopt;
  ExactProduct ep{CyclotomicRing(L), {}};
  const auto& R = ep.ring;
  ep.coeffs.push_back(R.one());
  for (const auto& mu : F) {
    std::int64_t a = R.exponent_of(mu);
    auto& c = ep.coeffs;
    c.push_back(c.back());
    for (std::size_t k = c.size() - 2; k >= 1; --k) {
      c[k] = R.sub(c[k - 1], R.mul_root(c[k], a));
    }
    c[0] = R.sub(R.zero(), R.mul_root(c[0], a));
  }
  return ep;
}

// Leja order: each next root maximizes the product of distances to the ones
// already taken. Multiplying in this order keeps partial products small.
std::vector<Complex> leja_order(std::span<const CirclePoint> F) {
  std::vector<Complex> v;
  v.reserve(F.size());
  for (const auto& p : F) v.push_back(p.value());
  std::vector<double> score(v.size(), 0.0);
  std::vector<Complex> out;
  out.reserve(v.size());
  std::vector<bool> used(v.size(), false);
  for (std::size_t step = 0; step < v.size(); ++step) {
    std::size_t best = v.size();
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!used[i] && (best == v.size() || score[i] > score[best])) best = i;
    }
    used[best] = true;
    out.push_back(v[best]);
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!used[i]) score[i] += std::log(std::abs(v[i] - v[best]));
    }
  }
  return out;
}

std::vector<Complex> float_product(std::span<const CirclePoint> F) {
  std::vector<Complex> c{Complex{1.0, 0.0}};
  for (Complex v : leja_order(F)) {
    c.push_back(c.back());
    for (std::size_t k = c.size() - 2; k >= 1; --k) c[k] = c[k - 1] - v * c[k];
    c[0] = -v * c[0];
  }
  return c;
}

std::vector<CirclePoint> sorted_roots(std::span<const CirclePoint> F) {
  std::vector<CirclePoint> pts(F.begin(), F.end());
  sort_distinct(pts, ErrorCode::DuplicateRoot);
  return pts;
}

// Defect of a monic degree-m coefficient vector against X^m - 1.
double float_defect(const std::vector<Complex>& c) {
  double s = 0.0;
  const std::size_t m = c.size() - 1;
  for (std::size_t k = 0; k <= m; ++k) {
    Complex target = k == 0 ? Complex{-1.0, 0.0} : (k == m ? Complex{1.0, 0.0} : Complex{});
    s += std::abs(c[k] - target);
  }
  return s;
}

double exact_defect(const ExactProduct& ep) {
  const auto& R = ep.ring;
  const std::size_t m = ep.coeffs.size() - 1;
  double s = 0.0;
  for (std::size_t k = 0; k <= m; ++k) {
    CyclotomicRing::Elem diff = ep.coeffs[k];
    if (k == 0) diff = R.add(diff, R.one());
    if (k == m) diff = R.sub(diff, R.one());
    if (!R.is_zero(diff)) s += std::abs(R.to_complex(diff));
  }
  return s;
}

}  // namespace

CPoly poly_from_roots(std::span<const CirclePoint> F) {
  auto pts = sorted_roots(F);
  if (auto ep = exact_product(pts)) {
    std::vector<Complex> c;
    c.reserve(ep->coeffs.size());
    for (const auto& e : ep->coeffs) c.push_back(ep->ring.is_zero(e) ? Complex{} : ep->ring.to_complex(e));
    return CPoly(std::move(c));
  }
  return CPoly(float_product(pts));
}

CPoly q_poly(const CirclePoint& lambda, std::span<const CirclePoint> F) {
  auto pts = sorted_roots(F);
  auto it = std::find(pts.begin(), pts.end(), lambda);
  if (it == pts.end()) fail(ErrorCode::NotARoot, "q_poly: " + lambda.to_string() + " is not in F");

  if (auto ep = exact_product(pts)) {
    const auto& R = ep->ring;
    const auto& a = ep->coeffs;
    const std::size_t m = a.size() - 1;
    std::int64_t e = R.exponent_of(lambda);
    // Synthetic division: b_{m-1} = a_m, b_{k-1} = a_k + lambda b_k.
    std::vector<CyclotomicRing::Elem> b(m);
    b[m - 1] = a[m];
    for (std::size_t k = m - 1; k >= 1; --k) b[k - 1] = R.add(a[k], R.mul_root(b[k], e));
    if (!R.is_zero(R.add(a[0], R.mul_root(b[0], e)))) {
      fail(ErrorCode::NotARoot, "q_poly: nonzero remainder");
    }
    // Q(lambda) == P'(lambda), both evaluated in the ring.
    CyclotomicRing::Elem q_at = R.zero(), dp_at = R.zero();
    for (std::size_t k = 0; k < m; ++k) q_at = R.add(q_at, R.mul_root(b[k], e * static_cast<std::int64_t>(k)));
    for (std::size_t k = 1; k <= m; ++k) {
      auto t = R.mul_root(a[k], e * static_cast<std::int64_t>(k - 1));
      for (auto& x : t) x *= static_cast<long long>(k);
      dp_at = R.add(dp_at, t);
    }
    if (!R.is_zero(R.sub(q_at, dp_at))) fail(ErrorCode::NotARoot, "q_poly: Q(lambda) != P'(lambda)");
    std::vector<Complex> c;
    for (const auto& x : b) c.push_back(R.is_zero(x) ? Complex{} : R.to_complex(x));
    return CPoly(std::move(c));
  }

  std::vector<CirclePoint> rest;
  rest.reserve(pts.size() - 1);
  for (const auto& p : pts) {
    if (!(p == lambda)) rest.push_back(p);
  }
  CPoly Q(float_product(rest));
  CPoly P(float_product(pts));
  Complex lv = lambda.value();
  Complex dp = P.derivative()(lv);
  double scale = std::max(1.0, P.one_norm() * static_cast<double>(pts.size()));
  if (std::abs(Q(lv) - dp) > 1e-10 * scale) {
    fail(ErrorCode::NotARoot, "q_poly: Q(lambda) and P'(lambda) disagree numerically");
  }
  return Q;
}

BalanceCheck is_eps_balanced(std::span<const CirclePoint> F, double eps) {
  require(eps > 0.0 && eps < 1.0, "is_eps_balanced: eps must lie in (0,1)");
  require(!F.empty(), "is_eps_balanced: empty set");
  auto pts = sorted_roots(F);
  BalanceCheck out;
  if (auto ep = exact_product(pts)) {
    out.exact = true;
    out.defect = exact_defect(*ep);
  } else {
    out.defect = float_defect(float_product(pts));
  }
  out.balanced = out.defect <= eps;
  return out;
}

namespace {

// P_F for F = G u (R_N minus the roots at `removed`), without an O(N^2)
// product: (X^N - 1) / prod (X - zeta^r) * prod (X - g).
std::vector<Complex> structured_product(std::uint64_t N, const std::vector<std::int64_t>& removed,
                                        std::span<const CirclePoint> G) {
  std::vector<Complex> c(N + 1);
  c[0] = -1.0;
  c[N] = 1.0;
  for (std::size_t i = 0; i < removed.size(); ++i) {
    std::vector<Complex> q(c.size() - 1);
    if (i == 0) {
      // (X^N - 1)/(X - mu) = sum mu^{N-1-k} X^k with exact root powers.
      for (std::size_t k = 0; k < q.size(); ++k) {
        auto e = static_cast<std::int64_t>((static_cast<__int128>(removed[0]) * (N - 1 - k)) % N);
        q[k] = CirclePoint::rational(e, static_cast<std::int64_t>(N)).value();
      }
    } else {
      Complex mu = CirclePoint::rational(removed[i], static_cast<std::int64_t>(N)).value();
      q.back() = c.back();
      for (std::size_t k = q.size() - 1; k >= 1; --k) q[k - 1] = c[k] + mu * q[k];
    }
    c = std::move(q);
  }
  for (const auto& g : G) {
    Complex v = g.value();
    c.push_back(c.back());
    for (std::size_t k = c.size() - 2; k >= 1; --k) c[k] = c[k - 1] - v * c[k];
    c[0] = -v * c[0];
  }
  return c;
}

}  // namespace

BalancedSet balance_completion(std::span<const CirclePoint> G, double eps, std::size_t size_cap,
                               std::uint64_t n_cap) {
  require(eps > 0.0 && eps < 1.0, "balance_completion: eps must lie in (0,1)");
  require(!G.empty(), "balance_completion: G is empty");
  if (G.size() > size_cap) fail(ErrorCode::CapExceeded, "balance_completion: |G| exceeds the configured cap");
  require(n_cap >= 1, "balance_completion: N cap must be positive");
  auto g = sorted_roots(G);
  std::vector<double> thetas;
  for (const auto& p : g) thetas.push_back(p.turns());

  std::uint64_t M = (std::uint64_t{1} << g.size()) + 1;
  bool last = false;
  while (true) {
    if (M >= n_cap) {
      M = n_cap;
      last = true;
    }
    auto dio = dirichlet_approx(thetas, M);
    const std::uint64_t N = dio.N;
    const auto Ni = static_cast<std::int64_t>(N);

    std::vector<std::int64_t> removed;
    for (auto p : dio.p) removed.push_back(((p % Ni) + Ni) % Ni);
    std::vector<std::int64_t> sorted_removed = removed;
    std::sort(sorted_removed.begin(), sorted_removed.end());
    bool guard = std::adjacent_find(sorted_removed.begin(), sorted_removed.end()) == sorted_removed.end();

    std::vector<CirclePoint> F(g.begin(), g.end());
    if (guard) {
      for (std::int64_t k = 0; k < Ni; ++k) {
        if (std::binary_search(sorted_removed.begin(), sorted_removed.end(), k)) continue;
        auto root = CirclePoint::rational(k, Ni);
        if (std::find(g.begin(), g.end(), root) != g.end()) {
          guard = false;
          break;
        }
        F.push_back(root);
      }
    }

    if (guard) {
      BalancedSet out;
      out.epsilon = eps;
      out.N = N;
      out.M = M;
      out.replaced = removed;
      out.collision_gap = 1.0;
      for (std::size_t i = 1; i < sorted_removed.size(); ++i) {
        out.collision_gap = std::min(out.collision_gap,
                                     static_cast<double>(sorted_removed[i] - sorted_removed[i - 1]) / static_cast<double>(N));
      }
      if (sorted_removed.size() > 1) {
        out.collision_gap = std::min(out.collision_gap,
                                     static_cast<double>(Ni - sorted_removed.back() + sorted_removed.front()) / static_cast<double>(N));
      }
      std::sort(F.begin(), F.end());
      if (auto ep = exact_product(F)) {
        out.exact = true;
        out.defect = exact_defect(*ep);
      } else {
        out.defect = float_defect(structured_product(N, removed, g));
      }
      out.certified = out.defect <= eps;
      if (out.certified) {
        out.points = std::move(F);
        return out;
      }
    }
    if (last) break;
    M *= 2;
  }
  fail(ErrorCode::CapExceeded, "balance_completion: no certified set with N within the cap");
}

BalanceBounds balance_bounds(std::span<const CirclePoint> F, double eps, std::size_t grid) {
  require(eps > 0.0 && eps < 1.0, "balance_bounds: eps must lie in (0,1)");
  require(grid >= 1, "balance_bounds: grid must be nonempty");
  auto pts = sorted_roots(F);
  require(!pts.empty(), "balance_bounds: empty set");
  const double m = static_cast<double>(pts.size());
  const double p_norm = poly_from_roots(pts).one_norm();
  BalanceBounds out;
  out.upper_limit = m * (2.0 + eps);
  out.lower_limit = m * (1.0 - eps);
  out.min_at_root = std::numeric_limits<double>::infinity();
  std::vector<Complex> mus(grid);
  for (std::size_t i = 0; i < grid; ++i) {
    mus[i] = CirclePoint::rational(static_cast<std::int64_t>(i), static_cast<std::int64_t>(grid)).value();
  }
  for (const auto& lam : pts) {
    CPoly Q = q_poly(lam, pts);
    out.max_norm_ratio = std::max(out.max_norm_ratio, Q.one_norm() / p_norm);
    out.min_at_root = std::min(out.min_at_root, std::abs(Q(lam.value())));
    for (auto mu : mus) out.max_on_circle = std::max(out.max_on_circle, std::abs(Q(mu)));
  }
  out.holds = out.max_norm_ratio <= m && out.max_on_circle <= out.upper_limit &&
              out.min_at_root >= out.lower_limit;
  return out;
}

std::vector<Complex> moment_sequence(const PoleMeasure& m, std::size_t N) {
  std::vector<Complex> out(N + 1);
  for (std::size_t n = 0; n <= N; ++n) {
    Complex s{};
    for (const auto& a : m.atoms()) s += a.weight * a.point.power(static_cast<std::int64_t>(n)).value();
    out[n] = s;
  }
  return out;
}

}  // namespace rrl
