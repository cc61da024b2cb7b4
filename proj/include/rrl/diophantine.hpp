#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rrl/psp.hpp"

namespace rrl {

// Dense complex polynomial a_0 + a_1 X + ... + a_d X^d.
class CPoly {
 public:
  CPoly() = default;
  explicit CPoly(std::vector<Complex> coeffs);

  const std::vector<Complex>& coeffs() const { return c_; }
  std::size_t degree() const { return c_.empty() ? 0 : c_.size() - 1; }
  bool is_zero() const { return c_.empty(); }

  Complex operator()(Complex x) const;
  CPoly derivative() const;
  /// |a_0| + ... + |a_d|
  double one_norm() const;

 private:
  std::vector<Complex> c_;  // trailing zeros trimmed
};

/// k_j = j! for j = 1..j_max.
std::vector<BigInt> factorial_shifts(unsigned j_max);

inline constexpr unsigned kDefaultPigeonholeCap = 8;

/// A shift k >= 1 with {k * angle_r} in [0, 1/j) for the first min(j, n)
/// points. Cells floor(j {m * angle_r}) are hashed for m = 0, 1, ...; among
/// pairs m < m' sharing a cell the first one meeting the condition wins.
/// Throws CapExceeded if j > j_cap or the scan exhausts its budget.
std::uint64_t pigeonhole_shift(std::span<const CirclePoint> lambdas, unsigned j,
                               unsigned j_cap = kDefaultPigeonholeCap);

struct DirichletApprox {
  std::uint64_t N = 0;
  std::vector<std::int64_t> p;
  double max_error = 0.0;  ///< max_r |N theta_r - p_r|
  double bound = 0.0;      ///< M^{-1/m}
  bool by_pigeonhole = true;
};

/// 1 <= N <= M and integers p_r with |theta_r - p_r/N| <= 1/(N M^{1/m}).
DirichletApprox dirichlet_approx(std::span<const double> thetas, std::uint64_t M);

/// prod_{mu in F} (X - mu), multiplied in Leja order. Exact cancellation is
/// used when every point is a root of unity of modest order.
CPoly poly_from_roots(std::span<const CirclePoint> F);

/// P_F(X) / (X - lambda). Throws NotARoot if lambda is not in F.
CPoly q_poly(const CirclePoint& lambda, std::span<const CirclePoint> F);

struct BalanceCheck {
  bool balanced = false;
  double defect = 0.0;  ///< ||P_F - (X^{|F|} - 1)||_1
  bool exact = false;   ///< defect computed in exact arithmetic
};

/// eps must lie in (0, 1).
BalanceCheck is_eps_balanced(std::span<const CirclePoint> F, double eps);

struct BalancedSet {
  std::vector<CirclePoint> points;  ///< F = G u H, angle order
  double epsilon = 0.5;
  double defect = 0.0;
  bool certified = false;
  bool exact = false;
  std::uint64_t N = 0;  ///< |F|, order of the root set that was perturbed
  std::uint64_t M = 0;  ///< Dirichlet parameter that produced N
  std::vector<std::int64_t> replaced;  ///< p(lambda) mod N for each lambda in G
  /// min over distinct replaced roots of |p'/N - p/N| (1/N when distinct;
  /// 1 when |G| = 1).
  double collision_gap = 1.0;
};

inline constexpr std::size_t kDefaultBalanceSizeCap = 3;
inline constexpr std::uint64_t kDefaultBalanceNCap = 1'000'000;

/// Completes G with N-th roots of unity (the ones closest to G removed) so
/// that the union is eps-balanced. M starts at 2^|G| + 1 and doubles until
/// the set certifies. Throws CapExceeded past n_cap or |G| > size_cap.
BalancedSet balance_completion(std::span<const CirclePoint> G, double eps = 0.5,
                               std::size_t size_cap = kDefaultBalanceSizeCap,
                               std::uint64_t n_cap = kDefaultBalanceNCap);

struct BalanceBounds {
  double max_on_circle = 0.0;      ///< max over lambda in F and grid points mu of |Q(mu)|
  double min_at_root = 0.0;        ///< min over lambda in F of |Q(lambda)|
  double max_norm_ratio = 0.0;     ///< max over lambda of ||Q||_1 / ||P||_1
  double upper_limit = 0.0;        ///< m (2 + eps)
  double lower_limit = 0.0;        ///< m (1 - eps)
  bool holds = false;
};

/// Checks ||Q||_1 <= m ||P||_1, |Q(mu)| <= m(2+eps) on `grid` equally spaced
/// circle points and |Q(lambda)| >= m(1-eps), for every lambda in F.
BalanceBounds balance_bounds(std::span<const CirclePoint> F, double eps, std::size_t grid = 4096);

/// M(alpha)(n) = sum alpha(lambda) lambda^n for n = 0..N.
std::vector<Complex> moment_sequence(const PoleMeasure& m, std::size_t N);

}  // namespace rrl
