#include "rrl/psp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace rrl {

PoleMeasure::PoleMeasure(std::vector<Atom> atoms, double tail_mass) {
  for (const auto& a : atoms) add(a.point, a.weight);
  set_tail_mass(tail_mass);
}

void PoleMeasure::add(const CirclePoint& point, Complex weight) {
  require(std::isfinite(weight.real()) && std::isfinite(weight.imag()),
          "PoleMeasure: weight must be finite");
  require(weight != Complex{}, "PoleMeasure: weight must be nonzero");
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), point,
                             [](const Atom& a, const CirclePoint& p) { return a.point < p; });
  if ((it != atoms_.end() && it->point == point) ||
      (it != atoms_.begin() && std::prev(it)->point == point)) {
    fail(ErrorCode::DuplicatePole, "PoleMeasure: duplicate atom at " + point.to_string());
  }
  atoms_.insert(it, Atom{point, weight});
}

void PoleMeasure::set_tail_mass(double t) {
  require(std::isfinite(t) && t >= 0.0, "PoleMeasure: tail_mass must be a nonnegative real");
  tail_mass_ = t;
}

double PoleMeasure::total_mass() const {
  double s = 0.0;
  for (const auto& a : atoms_) s += std::abs(a.weight);
  return s;
}

bool PoleMeasure::all_exact() const {
  return std::all_of(atoms_.begin(), atoms_.end(),
                     [](const Atom& a) { return a.point.is_exact(); });
}

std::int64_t PoleMeasure::common_order() const {
  __int128 l = 1;
  for (const auto& a : atoms_) {
    if (!a.point.is_exact()) return 0;
    std::int64_t q = a.point.denominator();
    l = l / std::gcd(static_cast<std::int64_t>(l), q) * q;
    if (l > (static_cast<__int128>(1) << 62)) return 0;
  }
  return static_cast<std::int64_t>(l);
}

std::int64_t PoleMeasure::max_order() const {
  std::int64_t q = 1;
  for (const auto& a : atoms_) {
    if (!a.point.is_exact()) return 0;
    q = std::max(q, a.point.denominator());
  }
  return q;
}

double PoleMeasure::largest_gap() const {
  if (atoms_.size() < 2) return 1.0;
  double gap = 1.0 - atoms_.back().point.turns() + atoms_.front().point.turns();
  for (std::size_t i = 1; i < atoms_.size(); ++i) {
    gap = std::max(gap, atoms_[i].point.turns() - atoms_[i - 1].point.turns());
  }
  return gap;
}

Complex psp_eval(const PoleMeasure& m, Complex z, double exclusion) {
  require(std::isfinite(z.real()) && std::isfinite(z.imag()), "psp_eval: z must be finite");
  Complex s{};
  for (const auto& a : m.atoms()) {
    Complex d = z - a.point.value();
    if (std::abs(d) <= exclusion) {
      fail(ErrorCode::PoleCollision, "psp_eval: z is within the exclusion radius of the pole at " +
                                         a.point.to_string());
    }
    s += a.weight / d;
  }
  return s;
}

Complex psp_coefficient(const PoleMeasure& m, std::int64_t n) {
  Complex s{};
  std::int64_t e = -n - 1;
  for (const auto& a : m.atoms()) s -= a.weight * a.point.power(e).value();
  return s;
}

Complex psp_coefficient(const PoleMeasure& m, const BigInt& n) {
  Complex s{};
  BigInt e = -n - 1;
  for (const auto& a : m.atoms()) s -= a.weight * a.point.power(e).value();
  return s;
}

std::vector<Complex> taylor_inner(const PoleMeasure& m, std::size_t N) {
  std::vector<Complex> b(N + 1);
  for (std::size_t n = 0; n <= N; ++n) b[n] = psp_coefficient(m, static_cast<std::int64_t>(n));
  return b;
}

std::vector<Complex> taylor_outer(const PoleMeasure& m, std::size_t N) {
  std::vector<Complex> b(N);
  for (std::size_t i = 0; i < N; ++i) {
    b[i] = psp_coefficient(m, -static_cast<std::int64_t>(i) - 1);
  }
  return b;
}

Evaluation inner_partial_sum(const PoleMeasure& m, Complex z, std::size_t N) {
  double r = std::abs(z);
  require(r < 1.0, "inner_partial_sum: |z| must be < 1");
  auto b = taylor_inner(m, N);
  Complex s{};
  for (std::size_t n = b.size(); n-- > 0;) s = s * z + b[n];
  double mass = m.total_mass();
  double bound = mass * std::pow(r, static_cast<double>(N + 1)) / (1.0 - r) +
                 m.tail_mass() / (1.0 - r);
  return {s, bound};
}

Evaluation outer_partial_sum(const PoleMeasure& m, Complex z, std::size_t N) {
  double r = std::abs(z);
  require(r > 1.0, "outer_partial_sum: |z| must be > 1");
  auto b = taylor_outer(m, N);
  Complex w = 1.0 / z;
  Complex s{};
  for (std::size_t i = b.size(); i-- > 0;) s = (s + b[i]) * w;
  double mass = m.total_mass();
  double bound = mass * std::pow(r, -static_cast<double>(N + 1)) / (1.0 - 1.0 / r) +
                 m.tail_mass() / (r - 1.0);
  return {-s, bound};
}

ResidueEstimate recover_residue(const Evaluator& g, const CirclePoint& lambda,
                                std::span<const double> radii, double tol) {
  require(!radii.empty(), "recover_residue: empty radius grid");
  require(tol > 0.0, "recover_residue: tol must be positive");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    require(radii[i] > 0.0, "recover_residue: radii must be positive");
    if (i > 0) require(radii[i] > radii[i - 1], "recover_residue: radii must be strictly increasing");
  }
  require(radii.back() <= 1.0 - 1e-8, "recover_residue: last radius must be <= 1 - 1e-8");

  ResidueEstimate out;
  out.radii.assign(radii.begin(), radii.end());
  out.trace.reserve(radii.size());
  Complex dir = lambda.value();
  for (double r : radii) {
    Complex z = r * dir;
    Complex gz;
    try {
      gz = g(z);
    } catch (const Error&) {
      throw;
    } catch (const std::exception& e) {
      fail(ErrorCode::EvalFailure, std::string("recover_residue: evaluator failed: ") + e.what());
    }
    if (!std::isfinite(gz.real()) || !std::isfinite(gz.imag())) {
      fail(ErrorCode::EvalFailure, "recover_residue: evaluator returned a non-finite value");
    }
    out.trace.push_back((z - dir) * gz);
  }
  out.estimate = out.trace.back();
  if (out.trace.size() >= 2) {
    out.oscillation = std::abs(out.trace.back() - out.trace[out.trace.size() - 2]);
  }
  if (out.oscillation > tol * std::max(1.0, std::abs(out.estimate))) {
    fail(ErrorCode::NonConvergent, "recover_residue: trace still moving at the finest radius");
  }
  return out;
}

PoleMeasure fourier_psp(std::span<const std::pair<std::int64_t, Complex>> fhat, double theta) {
  require(std::isfinite(theta), "fourier_psp: theta must be finite");
  PoleMeasure m;
  for (const auto& [j, c] : fhat) {
    if (c == Complex{}) continue;
    CirclePoint lam = j == 0 ? CirclePoint::rational(0, 1) : CirclePoint::real(frac_mul(-j, theta));
    m.add(lam, -lam.value() * c);
  }
  return m;
}

Evaluator psp_evaluator(const PoleMeasure& m, double exclusion) {
  return [m, exclusion](Complex z) { return psp_eval(m, z, exclusion); };
}

}  // namespace rrl
