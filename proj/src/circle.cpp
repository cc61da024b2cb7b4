#include "rrl/circle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace rrl {

namespace {

using u128 = unsigned __int128;

constexpr double kBelowOne = 0x1.fffffffffffffp-1;

// t in (0,1) written as mant * 2^-shift with mant < 2^53.
void split_mantissa(double t, std::uint64_t& mant, int& shift) {
  int e = 0;
  double m = std::frexp(t, &e);
  mant = static_cast<std::uint64_t>(std::ldexp(m, 53));
  shift = 53 - e;
  while (shift > 0 && (mant & 1u) == 0) {
    mant >>= 1;
    --shift;
  }
}

double clamp_below_one(double f) { return f >= 1.0 ? kBelowOne : f; }

double negate_frac(double f) {
  if (f == 0.0) return 0.0;
  return clamp_below_one(1.0 - f);
}

}  // namespace

double frac(double x) {
  double f = x - std::floor(x);
  return clamp_below_one(f);
}

double frac_mul(std::int64_t k, double t) {
  require(std::isfinite(t), "frac_mul: non-finite angle");
  double t0 = t - std::floor(t);
  if (t0 == 0.0 || k == 0) return 0.0;
  if (t0 >= 1.0) return 0.0;
  std::uint64_t mant = 0;
  int shift = 0;
  split_mantissa(t0, mant, shift);
  u128 ka = k < 0 ? static_cast<u128>(-(k + 1)) + 1 : static_cast<u128>(k);
  u128 prod = ka * mant;
  double f = 0.0;
  if (shift >= 127) {
    f = std::ldexp(static_cast<double>(prod), -shift);
  } else {
    u128 mask = (static_cast<u128>(1) << shift) - 1;
    f = std::ldexp(static_cast<double>(prod & mask), -shift);
  }
  f = clamp_below_one(f);
  return k < 0 ? negate_frac(f) : f;
}

double frac_mul(const BigInt& k, double t) {
  if (k >= std::numeric_limits<std::int64_t>::min() &&
      k <= std::numeric_limits<std::int64_t>::max()) {
    return frac_mul(k.convert_to<std::int64_t>(), t);
  }
  require(std::isfinite(t), "frac_mul: non-finite angle");
  double t0 = t - std::floor(t);
  if (t0 == 0.0 || t0 >= 1.0) return 0.0;
  std::uint64_t mant = 0;
  int shift = 0;
  split_mantissa(t0, mant, shift);
  BigInt ka = abs(k);
  BigInt prod = ka * mant;
  BigInt mask = (BigInt(1) << shift) - 1;
  BigInt r = prod & mask;
  // Keep the top 64 bits only; the rest is below double resolution.
  double f = 0.0;
  if (r != 0) {
    int bits = static_cast<int>(msb(r)) + 1;
    int drop = std::max(0, bits - 64);
    auto top = static_cast<std::uint64_t>(r >> drop);
    f = std::ldexp(static_cast<double>(top), drop - shift);
  }
  f = clamp_below_one(f);
  return k < 0 ? negate_frac(f) : f;
}

Complex unit_from_turns(double f) {
  f = frac(f);
  if (f == 0.0) return {1.0, 0.0};
  if (f == 0.25) return {0.0, 1.0};
  if (f == 0.5) return {-1.0, 0.0};
  if (f == 0.75) return {0.0, -1.0};
  double g = f > 0.5 ? f - 1.0 : f;
  double a = kTwoPi * g;
  return {std::cos(a), std::sin(a)};
}

CirclePoint CirclePoint::rational(std::int64_t p, std::int64_t q) {
  require(q > 0, "CirclePoint: denominator must be positive");
  p %= q;
  if (p < 0) p += q;
  std::int64_t g = std::gcd(p, q);
  if (g == 0) g = q;
  CirclePoint c;
  c.exact_ = true;
  c.p_ = p / g;
  c.q_ = q / g;
  c.turns_ = static_cast<double>(c.p_) / static_cast<double>(c.q_);
  return c;
}

CirclePoint CirclePoint::real(double turns) {
  require(std::isfinite(turns), "CirclePoint: angle must be finite");
  CirclePoint c;
  c.exact_ = false;
  c.p_ = 0;
  c.q_ = 0;
  c.turns_ = frac(turns);
  return c;
}

Complex CirclePoint::value() const {
  if (!exact_) return unit_from_turns(turns_);
  if ((4 * static_cast<__int128>(p_)) % q_ == 0) {
    switch (static_cast<int>((4 * static_cast<__int128>(p_)) / q_)) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  std::int64_t g = 2 * static_cast<__int128>(p_) > q_ ? p_ - q_ : p_;
  double a = kTwoPi * (static_cast<double>(g) / static_cast<double>(q_));
  return {std::cos(a), std::sin(a)};
}

CirclePoint CirclePoint::power(std::int64_t k) const {
  if (!exact_) return real(frac_mul(k, turns_));
  __int128 r = (static_cast<__int128>(p_) * k) % q_;
  if (r < 0) r += q_;
  return rational(static_cast<std::int64_t>(r), q_);
}

CirclePoint CirclePoint::power(const BigInt& k) const {
  if (!exact_) return real(frac_mul(k, turns_));
  BigInt r = (BigInt(p_) * k) % q_;
  if (r < 0) r += q_;
  return rational(r.convert_to<std::int64_t>(), q_);
}

double CirclePoint::power_turns(std::int64_t k) const {
  return power(k).turns();
}

std::string CirclePoint::to_string() const {
  std::ostringstream os;
  if (exact_) {
    os << p_ << '/' << q_;
  } else {
    os.precision(17);
    os << turns_;
  }
  return os.str();
}

bool operator==(const CirclePoint& a, const CirclePoint& b) {
  if (a.exact_ && b.exact_) return a.p_ == b.p_ && a.q_ == b.q_;
  return a.turns_ == b.turns_;
}

std::vector<CirclePoint> roots_of_unity(std::int64_t m) {
  require(m >= 1, "roots_of_unity: order must be positive");
  std::vector<CirclePoint> out;
  out.reserve(static_cast<std::size_t>(m));
  for (std::int64_t k = 0; k < m; ++k) out.push_back(CirclePoint::rational(k, m));
  return out;
}

void sort_distinct(std::vector<CirclePoint>& pts, ErrorCode dup_code) {
  std::stable_sort(pts.begin(), pts.end());
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (pts[i] == pts[i - 1]) fail(dup_code, "duplicate circle point " + pts[i].to_string());
  }
}

const char* error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::PoleCollision: return "PoleCollision";
    case ErrorCode::NonConvergent: return "NonConvergent";
    case ErrorCode::DuplicatePole: return "DuplicatePole";
    case ErrorCode::DuplicateRoot: return "DuplicateRoot";
    case ErrorCode::NotARoot: return "NotARoot";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::ResonantGamma: return "ResonantGamma";
    case ErrorCode::InsufficientDepth: return "InsufficientDepth";
    case ErrorCode::EvalFailure: return "EvalFailure";
    case ErrorCode::UnknownRecipe: return "UnknownRecipe";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace rrl
