#pragma once

#include <vector>

#include "rrl/psp.hpp"

namespace rrl {

// Arc L1 means of |g| on circles of increasing radius. A growing ratio is
// evidence of boundary blow-up on the arc, not a proof of it.
struct ArcProbeResult {
  double omega1 = 0.0;
  double omega2 = 0.0;
  std::vector<double> radii;
  std::vector<double> integrals;  ///< composite trapezoid estimates
  std::size_t quadrature_n = 0;

  /// integrals.back() / integrals.front()
  double ratio() const;
};

/// Radii 1 - 10^{-k/2}, k = 2..6.
std::vector<double> default_radii();

/// Requires omega1 < omega2, radii increasing in (0,1), quadrature_n >= 64.
/// Throws EvalFailure when g throws or returns a non-finite value.
ArcProbeResult arc_l1_growth(const Evaluator& g, double omega1, double omega2,
                             const std::vector<double>& radii, std::size_t quadrature_n = 4096);

/// |g(r lambda)| for each radius.
std::vector<double> radial_blowup(const Evaluator& g, const CirclePoint& lambda,
                                  const std::vector<double>& radii);

}  // namespace rrl
