#include "rrl/cyclotomic.hpp"

#include <cmath>

namespace rrl {

std::int64_t euler_phi(std::int64_t n) {
  require(n >= 1, "euler_phi: n must be positive");
  std::int64_t r = n;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    while (n % p == 0) n /= p;
    r -= r / p;
  }
  if (n > 1) r -= r / n;
  return r;
}

namespace {

int mobius(std::int64_t n) {
  int mu = 1;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    n /= p;
    if (n % p == 0) return 0;
    mu = -mu;
  }
  if (n > 1) mu = -mu;
  return mu;
}

// poly *= (x^d - 1)
void mul_binomial(std::vector<BigInt>& poly, std::size_t d) {
  std::vector<BigInt> out(poly.size() + d);
  for (std::size_t i = 0; i < poly.size(); ++i) {
    out[i + d] += poly[i];
    out[i] -= poly[i];
  }
  poly = std::move(out);
}

// poly /= (x^d - 1), exact.
void div_binomial(std::vector<BigInt>& poly, std::size_t d) {
  std::size_t n = poly.size() - 1;
  std::vector<BigInt> q(n - d + 1);
  std::vector<BigInt> r = poly;
  for (std::size_t i = n + 1; i-- > d;) {
    BigInt c = r[i];
    q[i - d] = c;
    r[i] -= c;
    r[i - d] += c;
  }
  for (std::size_t i = 0; i < d; ++i) {
    if (r[i] != 0) fail(ErrorCode::InvalidArgument, "cyclotomic: inexact division");
  }
  poly = std::move(q);
}

}  // namespace

std::vector<BigInt> cyclotomic_polynomial(std::int64_t n) {
  require(n >= 1, "cyclotomic_polynomial: n must be positive");
  std::vector<std::int64_t> up, down;
  for (std::int64_t d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    int mu = mobius(n / d);
    if (mu == 1) up.push_back(d);
    if (mu == -1) down.push_back(d);
  }
  std::vector<BigInt> poly{BigInt(1)};
  for (auto d : up) mul_binomial(poly, static_cast<std::size_t>(d));
  for (auto d : down) div_binomial(poly, static_cast<std::size_t>(d));
  return poly;
}

CyclotomicRing::CyclotomicRing(std::int64_t L) : L_(L) {
  require(L >= 1 && L <= (1 << 20), "CyclotomicRing: order out of range");
  auto phi = cyclotomic_polynomial(L);
  d_ = phi.size() - 1;
  pow_.resize(static_cast<std::size_t>(L));
  Elem cur(d_);
  cur[0] = 1;
  for (std::int64_t a = 0; a < L; ++a) {
    auto& sparse = pow_[static_cast<std::size_t>(a)];
    for (std::size_t i = 0; i < d_; ++i) {
      if (cur[i] != 0) sparse.emplace_back(i, cur[i]);
    }
    // cur *= x mod phi
    BigInt top = cur[d_ - 1];
    for (std::size_t i = d_ - 1; i > 0; --i) cur[i] = cur[i - 1];
    cur[0] = 0;
    if (top != 0) {
      for (std::size_t i = 0; i < d_; ++i) cur[i] -= top * phi[i];
    }
  }
  zeta_pow_.resize(d_);
  for (std::size_t i = 0; i < d_; ++i) {
    zeta_pow_[i] = CirclePoint::rational(static_cast<std::int64_t>(i), L).value();
  }
}

CyclotomicRing::Elem CyclotomicRing::one() const {
  Elem e(d_);
  e[0] = 1;
  return e;
}

CyclotomicRing::Elem CyclotomicRing::root(std::int64_t a) const {
  a %= L_;
  if (a < 0) a += L_;
  Elem e(d_);
  for (const auto& [i, c] : pow_[static_cast<std::size_t>(a)]) e[i] = c;
  return e;
}

std::int64_t CyclotomicRing::exponent_of(const CirclePoint& p) const {
  require(p.is_exact(), "CyclotomicRing: point is not a root of unity");
  require(L_ % p.denominator() == 0, "CyclotomicRing: point order does not divide the ring order");
  return p.numerator() * (L_ / p.denominator());
}

CyclotomicRing::Elem CyclotomicRing::add(const Elem& x, const Elem& y) const {
  Elem r(d_);
  for (std::size_t i = 0; i < d_; ++i) r[i] = x[i] + y[i];
  return r;
}

CyclotomicRing::Elem CyclotomicRing::sub(const Elem& x, const Elem& y) const {
  Elem r(d_);
  for (std::size_t i = 0; i < d_; ++i) r[i] = x[i] - y[i];
  return r;
}

CyclotomicRing::Elem CyclotomicRing::mul_root(const Elem& x, std::int64_t a) const {
  a %= L_;
  if (a < 0) a += L_;
  Elem r(d_);
  for (std::size_t i = 0; i < d_; ++i) {
    if (x[i] == 0) continue;
    auto idx = static_cast<std::size_t>((static_cast<std::int64_t>(i) + a) % L_);
    for (const auto& [j, c] : pow_[idx]) r[j] += x[i] * c;
  }
  return r;
}

bool CyclotomicRing::is_zero(const Elem& x) const {
  for (const auto& c : x) {
    if (c != 0) return false;
  }
  return true;
}

Complex CyclotomicRing::to_complex(const Elem& x) const {
  Complex s{};
  for (std::size_t i = 0; i < d_; ++i) {
    if (x[i] != 0) s += x[i].convert_to<double>() * zeta_pow_[i];
  }
  return s;
}

bool exact_product_feasible(std::int64_t L, std::size_t count) {
  if (L < 1 || L > 4096) return false;
  double d = static_cast<double>(euler_phi(L));
  double n = static_cast<double>(count);
  return n * n * d <= 4e7;
}

}  // namespace rrl
