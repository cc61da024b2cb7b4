#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "rrl/right_limits.hpp"

namespace rrl {

/// a_k = {gamma + k theta}, bound 1.
CoeffStream hecke_stream(double theta, double gamma = 0.0);

/// sum_{k<=N} {gamma + k theta} z^k with tail bound |z|^{N+1}/(1-|z|), |z| < 1.
Evaluation hecke_inner_eval(double theta, double gamma, Complex z, std::size_t N);

/// sum_{k<=N} {k theta} z^{-k} + 1/(1 - z), with tail bound |z|^{-N}/(|z|-1).
/// Requires |z| >= 1 + 1e-6.
Evaluation hecke_outer_eval(double theta, Complex z, std::size_t N);

/// -sum_{-N<=n<0} {gamma + n theta} z^n summed term by term, same bound.
Evaluation hecke_outer_direct(double theta, double gamma, Complex z, std::size_t N);

/// sum_{k<=N} {k theta - gamma} z^{-k} + z/(1 - z) + {gamma}. Throws
/// ResonantGamma if gamma is within 1e-10 of Z + n theta for some |n| <= N.
Evaluation hecke_gamma_outer(double theta, double gamma, Complex z, std::size_t N);

/// k <= N with {k theta} in [1 - g2, 1 - g1). Requires 0 <= g1 < g2 < 1.
std::vector<std::uint64_t> occurrence_times(double theta, double g1, double g2, std::uint64_t N);

struct OccurrenceCheck {
  std::size_t checked = 0;
  std::size_t skipped = 0;  ///< indices within the endpoint margin
  double max_residual = 0.0;
};

/// Coefficientwise comparison of
///   sum {g1 + k theta} z^k - sum {g2 + k theta} z^k + (g2 - g1)/(1 - z)
/// with the indicator series of occurrence_times, for k <= N.
OccurrenceCheck check_occurrence_identity(double theta, double g1, double g2, std::uint64_t N,
                                          double endpoint_margin = 1e-9);

// A map T of [0,1] to itself with a single turning point.
struct UnimodalMap {
  std::string name;
  std::function<double(double)> fn;
  double critical = 0.5;

  static UnimodalMap tent();
  static UnimodalMap identity(double critical = 0.5);
  /// x^2 + c on [-beta, beta] rescaled to [0, 1], beta = (1 + sqrt(1 - 4c))/2.
  /// The critical point 0 maps to 1/2; u <= 1/2 corresponds to x >= 0.
  static UnimodalMap quadratic(double c);
};

inline constexpr double kFeigenbaumParameter = -1.401155189;

/// (phi(T^k(x0)))_{0<=k<=N}, phi = +1 on [0, c] and -1 on (c, 1]. Periodic
/// critical orbits are not detected.
std::vector<int> itinerary(const UnimodalMap& map, double x0, std::size_t N);

struct KneadingData {
  std::vector<int> epsilons;              ///< eps_1 .. eps_N
  std::vector<std::int64_t> d_coeffs;     ///< d_0 .. d_N
};

/// d_0 = 1, d_k = d_{k-1} eps_k. Throws InvalidArgument unless every eps is +-1.
std::vector<std::int64_t> kneading_determinant(const std::vector<int>& eps);

/// Itinerary of T(c) (eps_1 .. eps_N) and its determinant.
KneadingData kneading_data(const UnimodalMap& map, std::size_t N);

enum class ZeroStatus { Found, NoZero };

struct RealZero {
  ZeroStatus status = ZeroStatus::NoZero;
  double s = 1.0;        ///< zero of the truncated series (Found)
  double lo = 0.0;
  double hi = 0.0;
  double r_max = 0.0;    ///< end of the certified interval
  double tail = 0.0;     ///< tail bound at the reported point
  double entropy = 0.0;  ///< -log s, or 0 for NoZero
  double entropy_upper = 0.0;  ///< -log r_max for NoZero
};

/// Smallest zero in (0, r_max] of sum_{n<=N} d_n r^n with |d_n| <= 1, where
/// r_max solves r^{N+1}/(1-r) = tol/2 (capped at r_cap). Throws
/// InsufficientDepth if the sign pattern cannot be certified against the tail.
RealZero smallest_real_zero(const std::vector<double>& coeffs, double tol, double r_cap = 1.0);

/// tau_n = parity of the binary digit sum of n, n = 0..N.
std::vector<std::uint8_t> thue_morse(std::size_t N);

/// Coefficients of prod_{2^m <= N} (1 - z^{2^m}) up to degree N.
std::vector<std::int64_t> feigenbaum_product(std::size_t N);

}  // namespace rrl
