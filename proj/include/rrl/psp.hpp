#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "rrl/circle.hpp"

namespace rrl {

/// Holomorphic function sampled at a point; may throw.
using Evaluator = std::function<Complex(Complex)>;

struct Atom {
  CirclePoint point;
  Complex weight;
};

// A finite measure on the unit circle: the weights rho(lambda) of a simple
// pole series, truncated. `tail_mass` bounds the l1 mass that was dropped and
// is added to every numeric error bound derived from the measure.
class PoleMeasure {
 public:
  PoleMeasure() = default;
  explicit PoleMeasure(std::vector<Atom> atoms, double tail_mass = 0.0);

  /// Inserts an atom, keeping angle order. Throws DuplicatePole.
  void add(const CirclePoint& point, Complex weight);
  void set_tail_mass(double t);

  const std::vector<Atom>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  bool empty() const { return atoms_.empty(); }
  double tail_mass() const { return tail_mass_; }

  /// Sum of |weight| over the stored atoms.
  double total_mass() const;
  /// True when every atom is a root of unity with an exact angle.
  bool all_exact() const;
  /// lcm of the orders of the atoms (0 if some atom is not exact).
  std::int64_t common_order() const;
  std::int64_t max_order() const;
  /// Largest gap, in turns, between cyclically consecutive atom angles.
  double largest_gap() const;

 private:
  std::vector<Atom> atoms_;
  double tail_mass_ = 0.0;
};

inline constexpr double kDefaultExclusionRadius = 1e-12;

/// Sum of weight/(z - lambda) over the atoms, in angle order.
/// Throws PoleCollision if z is within `exclusion` of an atom.
Complex psp_eval(const PoleMeasure& m, Complex z, double exclusion = kDefaultExclusionRadius);

/// The two-sided coefficient b_n = -sum rho(lambda) lambda^{-n-1}.
/// For exact atoms the exponent is reduced modulo the order first, so
/// b_n and b_{n+k} are bitwise equal whenever every order divides k.
Complex psp_coefficient(const PoleMeasure& m, std::int64_t n);
Complex psp_coefficient(const PoleMeasure& m, const BigInt& n);

/// b_0 .. b_N: Taylor coefficients at 0 of the inner series.
std::vector<Complex> taylor_inner(const PoleMeasure& m, std::size_t N);

/// b_{-1} .. b_{-N}: the outer series is -sum_{n<0} b_n z^n.
std::vector<Complex> taylor_outer(const PoleMeasure& m, std::size_t N);

/// A value together with an a-priori error bound.
struct Evaluation {
  Complex value;
  double bound = 0.0;
};

/// Truncated inner sum sum_{n<=N} b_n z^n with its tail bound (|z| < 1).
Evaluation inner_partial_sum(const PoleMeasure& m, Complex z, std::size_t N);
/// Truncated outer sum -sum_{-N<=n<0} b_n z^n with its tail bound (|z| > 1).
Evaluation outer_partial_sum(const PoleMeasure& m, Complex z, std::size_t N);

struct ResidueEstimate {
  Complex estimate;
  std::vector<double> radii;
  std::vector<Complex> trace;  ///< (z - lambda) g(z) at z = r lambda
  double oscillation = 0.0;    ///< |trace[last] - trace[last-1]|
};

/// Radial limit of (z - lambda) g(z) as z -> lambda along [0, lambda].
/// Throws NonConvergent if the last two samples differ by more than
/// tol * max(1, |estimate|).
ResidueEstimate recover_residue(const Evaluator& g, const CirclePoint& lambda,
                                std::span<const double> radii, double tol = 1e-3);

/// Simple pole measure whose inner Taylor coefficients are
/// phi(n theta) = sum_j fhat(j) e^{2 pi i j n theta}: one atom at
/// lambda_j = e^{-2 pi i j theta} with weight -lambda_j fhat(j).
/// Throws DuplicatePole if two indices land on the same point.
PoleMeasure fourier_psp(std::span<const std::pair<std::int64_t, Complex>> fhat, double theta);

/// Adapts a measure to the Evaluator interface.
Evaluator psp_evaluator(const PoleMeasure& m, double exclusion = kDefaultExclusionRadius);

}  // namespace rrl
