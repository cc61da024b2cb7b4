#include "rrl/boundary_probe.hpp"

#include <cmath>

#include "rrl/parallel.hpp"

namespace rrl {

namespace {

double checked_abs(const Evaluator& g, Complex z) {
  Complex v;
  try {
    v = g(z);
  } catch (const std::exception& e) {
    fail(ErrorCode::EvalFailure, std::string("evaluator failed: ") + e.what());
  }
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
    fail(ErrorCode::EvalFailure, "evaluator returned a non-finite value");
  }
  return std::abs(v);
}

void check_radii(const std::vector<double>& radii) {
  require(!radii.empty(), "radius schedule is empty");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    require(radii[i] > 0.0 && radii[i] < 1.0, "radii must lie in (0,1)");
    if (i > 0) require(radii[i] > radii[i - 1], "radii must be increasing");
  }
}

}  // namespace

double ArcProbeResult::ratio() const {
  require(!integrals.empty() && integrals.front() > 0.0, "ratio: first integral is zero");
  return integrals.back() / integrals.front();
}

std::vector<double> default_radii() {
  std::vector<double> r;
  for (int k = 2; k <= 6; ++k) r.push_back(1.0 - std::pow(10.0, -k / 2.0));
  return r;
}

ArcProbeResult arc_l1_growth(const Evaluator& g, double omega1, double omega2,
                             const std::vector<double>& radii, std::size_t quadrature_n) {
  require(std::isfinite(omega1) && std::isfinite(omega2) && omega1 < omega2, "arc_l1_growth: need omega1 < omega2");
  require(quadrature_n >= 64, "arc_l1_growth: quadrature_n must be at least 64");
  check_radii(radii);
  ArcProbeResult out{omega1, omega2, radii, {}, quadrature_n};
  const double h = (omega2 - omega1) / static_cast<double>(quadrature_n);
  std::vector<double> vals(quadrature_n + 1);
  for (double r : radii) {
    parallel_for(vals.size(), [&](std::size_t i) {
      double w = omega1 + h * static_cast<double>(i);
      vals[i] = checked_abs(g, std::polar(r, w));
    });
    double s = 0.5 * (vals.front() + vals.back());
    for (std::size_t i = 1; i < quadrature_n; ++i) s += vals[i];
    out.integrals.push_back(h * s);
  }
  return out;
}

std::vector<double> radial_blowup(const Evaluator& g, const CirclePoint& lambda,
                                  const std::vector<double>& radii) {
  check_radii(radii);
  std::vector<double> out;
  Complex l = lambda.value();
  for (double r : radii) out.push_back(checked_abs(g, r * l));
  return out;
}

}  // namespace rrl
