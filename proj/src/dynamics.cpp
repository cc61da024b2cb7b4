#include "rrl/dynamics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace rrl {

namespace {

double frac_at(std::int64_t k, double theta, double gamma) {
  return frac(frac(gamma) + frac_mul(k, theta));
}

void require_outside(Complex z) {
  require(std::isfinite(z.real()) && std::isfinite(z.imag()), "z must be finite");
  require(std::abs(z) >= 1.0 + 1e-6, "|z| must be at least 1 + 1e-6");
}

double outer_tail(Complex z, std::size_t N) {
  double r = std::abs(z);
  return std::pow(r, -static_cast<double>(N)) / (r - 1.0);
}

// sum_{k=0}^{N} c_k w^k by Horner.
template <class F>
Complex horner(F coeff, Complex w, std::size_t N) {
  Complex s{};
  for (std::size_t k = N + 1; k-- > 0;) s = s * w + coeff(static_cast<std::int64_t>(k));
  return s;
}

}  // namespace

CoeffStream hecke_stream(double theta, double gamma) {
  require(std::isfinite(theta) && std::isfinite(gamma), "hecke_stream: non-finite parameter");
  return CoeffStream(
      "hecke", [theta, gamma](std::uint64_t k) { return Complex{frac_at(static_cast<std::int64_t>(k), theta, gamma), 0.0}; },
      1.0);
}

Evaluation hecke_inner_eval(double theta, double gamma, Complex z, std::size_t N) {
  require(std::isfinite(z.real()) && std::isfinite(z.imag()) && std::abs(z) < 1.0, "hecke_inner_eval: need |z| < 1");
  double r = std::abs(z);
  Complex s = horner([&](std::int64_t k) { return frac_at(k, theta, gamma); }, z, N);
  return {s, std::pow(r, static_cast<double>(N + 1)) / (1.0 - r)};
}

Evaluation hecke_outer_eval(double theta, Complex z, std::size_t N) {
  require_outside(z);
  Complex s = horner([&](std::int64_t k) { return frac_mul(k, theta); }, 1.0 / z, N);
  return {s + 1.0 / (1.0 - z), outer_tail(z, N)};
}

Evaluation hecke_outer_direct(double theta, double gamma, Complex z, std::size_t N) {
  require_outside(z);
  Complex s = horner([&](std::int64_t k) { return k == 0 ? 0.0 : frac_at(-k, theta, gamma); }, 1.0 / z, N);
  return {-s, outer_tail(z, N)};
}

Evaluation hecke_gamma_outer(double theta, double gamma, Complex z, std::size_t N) {
  require_outside(z);
  require(std::isfinite(theta) && std::isfinite(gamma), "hecke_gamma_outer: non-finite parameter");
  const auto Ni = static_cast<std::int64_t>(N);
  for (std::int64_t n = -Ni; n <= Ni; ++n) {
    double f = frac_at(n, -theta, gamma);  // {gamma - n theta}
    if (std::min(f, 1.0 - f) <= 1e-10) {
      fail(ErrorCode::ResonantGamma, "hecke_gamma_outer: gamma lies in Z + theta Z to tolerance");
    }
  }
  Complex s = horner([&](std::int64_t k) { return frac_at(k, theta, -gamma); }, 1.0 / z, N);
  return {s + z / (1.0 - z) + frac(gamma), outer_tail(z, N)};
}

std::vector<std::uint64_t> occurrence_times(double theta, double g1, double g2, std::uint64_t N) {
  require(0.0 <= g1 && g1 < g2 && g2 < 1.0, "occurrence_times: need 0 <= g1 < g2 < 1");
  require(std::isfinite(theta), "occurrence_times: non-finite theta");
  std::vector<std::uint64_t> out;
  for (std::uint64_t k = 0; k <= N; ++k) {
    double f = frac_mul(static_cast<std::int64_t>(k), theta);
    if (f >= 1.0 - g2 && f < 1.0 - g1) out.push_back(k);
  }
  return out;
}

OccurrenceCheck check_occurrence_identity(double theta, double g1, double g2, std::uint64_t N,
                                          double endpoint_margin) {
  auto times = occurrence_times(theta, g1, g2, N);
  OccurrenceCheck out;
  std::size_t next = 0;
  for (std::uint64_t k = 0; k <= N; ++k) {
    bool member = next < times.size() && times[next] == k;
    if (member) ++next;
    double f = frac_mul(static_cast<std::int64_t>(k), theta);
    auto near = [&](double e) {
      double d = std::abs(f - e);
      return std::min(d, 1.0 - d) <= endpoint_margin;
    };
    if (near(1.0 - g1) || near(1.0 - g2)) {
      ++out.skipped;
      continue;
    }
    double lhs = frac_at(static_cast<std::int64_t>(k), theta, g1) - frac_at(static_cast<std::int64_t>(k), theta, g2) + (g2 - g1);
    out.max_residual = std::max(out.max_residual, std::abs(lhs - (member ? 1.0 : 0.0)));
    ++out.checked;
  }
  return out;
}

UnimodalMap UnimodalMap::tent() {
  return {"tent", [](double x) { return 1.0 - std::abs(1.0 - 2.0 * x); }, 0.5};
}

UnimodalMap UnimodalMap::identity(double critical) {
  require(critical > 0.0 && critical < 1.0, "identity map: critical point must lie in (0,1)");
  return {"identity", [](double x) { return x; }, critical};
}

UnimodalMap UnimodalMap::quadratic(double c) {
  require(std::isfinite(c) && c >= -2.0 && c <= 0.25, "quadratic map: c must lie in [-2, 1/4]");
  const double beta = (1.0 + std::sqrt(1.0 - 4.0 * c)) / 2.0;
  return {"quadratic",
          [beta, c](double u) {
            double x = beta - 2.0 * beta * u;
            double v = (beta - (x * x + c)) / (2.0 * beta);
            return std::clamp(v, 0.0, 1.0);
          },
          0.5};
}

std::vector<int> itinerary(const UnimodalMap& map, double x0, std::size_t N) {
  require(x0 >= 0.0 && x0 <= 1.0, "itinerary: x0 must lie in [0,1]");
  std::vector<int> out;
  out.reserve(N + 1);
  double x = x0;
  for (std::size_t k = 0; k <= N; ++k) {
    out.push_back(x <= map.critical ? 1 : -1);
    x = map.fn(x);
    require(x >= 0.0 && x <= 1.0 && std::isfinite(x), "itinerary: map left [0,1]");
  }
  return out;
}

std::vector<std::int64_t> kneading_determinant(const std::vector<int>& eps) {
  std::vector<std::int64_t> d{1};
  d.reserve(eps.size() + 1);
  for (int e : eps) {
    require(e == 1 || e == -1, "kneading_determinant: entries must be +1 or -1");
    d.push_back(d.back() * e);
  }
  return d;
}

KneadingData kneading_data(const UnimodalMap& map, std::size_t N) {
  require(N >= 1, "kneading_data: N must be >= 1");
  KneadingData out;
  out.epsilons = itinerary(map, map.fn(map.critical), N - 1);
  out.d_coeffs = kneading_determinant(out.epsilons);
  return out;
}

namespace {

double eval_real(const std::vector<double>& c, double r) {
  double s = 0.0;
  for (std::size_t k = c.size(); k-- > 0;) s = s * r + c[k];
  return s;
}

double tail_bound(double r, std::size_t N) {
  return std::pow(r, static_cast<double>(N + 1)) / (1.0 - r);
}

}  // namespace

RealZero smallest_real_zero(const std::vector<double>& coeffs, double tol, double r_cap) {
  require(!coeffs.empty(), "smallest_real_zero: no coefficients");
  require(tol > 0.0 && std::isfinite(tol), "smallest_real_zero: tol must be positive");
  require(r_cap > 0.0 && r_cap <= 1.0, "smallest_real_zero: r_cap must lie in (0,1]");
  for (double c : coeffs) require(std::isfinite(c) && std::abs(c) <= 1.0, "smallest_real_zero: coefficients must be bounded by 1");
  const std::size_t N = coeffs.size() - 1;

  double a = 0.0, b = 1.0;
  for (int it = 0; it < 200; ++it) {
    double m = 0.5 * (a + b);
    (tail_bound(m, N) < tol / 2 ? a : b) = m;
  }
  RealZero out;
  out.r_max = std::min(a, r_cap);
  require(out.r_max > 0.0, "smallest_real_zero: empty certified interval");

  constexpr int kGrid = 4096;
  double prev_r = 0.0;
  double prev_v = eval_real(coeffs, 0.0);
  auto certify = [&](double r, double v) {
    if (!(std::abs(v) > tail_bound(r, N))) {
      fail(ErrorCode::InsufficientDepth, "smallest_real_zero: truncated series too close to zero for its tail bound");
    }
  };
  certify(prev_r, prev_v);
  for (int i = 1; i <= kGrid; ++i) {
    double r = out.r_max * i / kGrid;
    double v = eval_real(coeffs, r);
    if ((v > 0) != (prev_v > 0) || v == 0.0) {
      if (v != 0.0) certify(r, v);
      double lo = prev_r, hi = r;
      double vlo = prev_v;
      for (int it = 0; it < 200 && hi - lo > 0; ++it) {
        double m = 0.5 * (lo + hi);
        if (m <= lo || m >= hi) break;
        double vm = eval_real(coeffs, m);
        if (vm == 0.0) {
          lo = hi = m;
          break;
        }
        if ((vm > 0) == (vlo > 0)) {
          lo = m;
          vlo = vm;
        } else {
          hi = m;
        }
      }
      out.status = ZeroStatus::Found;
      out.lo = lo;
      out.hi = hi;
      out.s = 0.5 * (lo + hi);
      out.tail = tail_bound(out.s, N);
      out.entropy = -std::log(out.s);
      return out;
    }
    certify(r, v);
    prev_r = r;
    prev_v = v;
  }
  out.status = ZeroStatus::NoZero;
  out.lo = out.hi = out.r_max;
  out.tail = tail_bound(out.r_max, N);
  out.entropy = 0.0;
  out.entropy_upper = -std::log(out.r_max);
  return out;
}

std::vector<std::uint8_t> thue_morse(std::size_t N) {
  std::vector<std::uint8_t> out(N + 1);
  for (std::size_t n = 0; n <= N; ++n) out[n] = static_cast<std::uint8_t>(std::popcount(n) & 1);
  return out;
}

std::vector<std::int64_t> feigenbaum_product(std::size_t N) {
  std::vector<std::int64_t> c(N + 1, 0);
  c[0] = 1;
  for (std::size_t p = 1; p <= N; p *= 2) {
    for (std::size_t k = N; k >= p; --k) c[k] -= c[k - p];
  }
  return c;
}

}  // namespace rrl
