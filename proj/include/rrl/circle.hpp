#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "rrl/error.hpp"

namespace rrl {

using BigInt = boost::multiprecision::cpp_int;
using Complex = std::complex<double>;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Fractional part of k*t, computed exactly from the binary expansion of t
/// and rounded once. Works for any integer k, including huge shifts like j!.
double frac_mul(std::int64_t k, double t);
double frac_mul(const BigInt& k, double t);

/// x - floor(x), folded into [0,1).
double frac(double x);

/// e^{2 pi i f}; quarter turns are returned exactly.
Complex unit_from_turns(double f);

// A point of the unit circle given by its angle in turns. Roots of unity are
// kept as reduced fractions p/q so that all their powers stay exact.
class CirclePoint {
 public:
  CirclePoint() = default;

  static CirclePoint rational(std::int64_t p, std::int64_t q);
  static CirclePoint real(double turns);

  bool is_exact() const { return exact_; }
  std::int64_t numerator() const { return p_; }
  std::int64_t denominator() const { return q_; }
  double turns() const { return turns_; }

  Complex value() const;

  /// lambda^k. Exact points stay exact; real points use frac_mul.
  CirclePoint power(std::int64_t k) const;
  CirclePoint power(const BigInt& k) const;

  /// {k * angle}, i.e. the angle of lambda^k in turns.
  double power_turns(std::int64_t k) const;

  std::string to_string() const;

  friend bool operator==(const CirclePoint& a, const CirclePoint& b);
  friend bool operator<(const CirclePoint& a, const CirclePoint& b) {
    return a.turns_ < b.turns_;
  }

 private:
  bool exact_ = true;
  std::int64_t p_ = 0;
  std::int64_t q_ = 1;
  double turns_ = 0.0;
};

/// The m-th roots of unity, exact, in increasing angle order.
std::vector<CirclePoint> roots_of_unity(std::int64_t m);

/// Sorts by angle and throws `dup_code` if two points coincide.
void sort_distinct(std::vector<CirclePoint>& pts, ErrorCode dup_code);

}  // namespace rrl
