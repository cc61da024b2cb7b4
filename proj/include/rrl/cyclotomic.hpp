#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "rrl/circle.hpp"

namespace rrl {

/// Euler's totient.
std::int64_t euler_phi(std::int64_t n);

/// Integer coefficients of the n-th cyclotomic polynomial, ascending degree.
std::vector<BigInt> cyclotomic_polynomial(std::int64_t n);

// Exact arithmetic in Z[zeta_L], elements stored in the power basis modulo
// the L-th cyclotomic polynomial. Used for roots-of-unity products, where
// exact cancellation (e.g. prod (X - zeta^k) = X^L - 1) must yield exact zeros.
class CyclotomicRing {
 public:
  using Elem = std::vector<BigInt>;

  explicit CyclotomicRing(std::int64_t L);

  std::int64_t order() const { return L_; }
  std::size_t degree() const { return d_; }

  Elem zero() const { return Elem(d_); }
  Elem one() const;
  /// zeta^a for any integer a.
  Elem root(std::int64_t a) const;
  /// Exponent a with zeta_L^a equal to the given exact point; the point's
  /// order must divide L.
  std::int64_t exponent_of(const CirclePoint& p) const;

  Elem add(const Elem& x, const Elem& y) const;
  Elem sub(const Elem& x, const Elem& y) const;
  Elem mul_root(const Elem& x, std::int64_t a) const;
  bool is_zero(const Elem& x) const;
  Complex to_complex(const Elem& x) const;

 private:
  std::int64_t L_;
  std::size_t d_;
  std::vector<Complex> zeta_pow_;
  // x^a mod Phi_L for 0 <= a < L, as sparse (index, coefficient) lists.
  std::vector<std::vector<std::pair<std::size_t, BigInt>>> pow_;
};

/// Whether exact products of `count` linear factors over Z[zeta_L] are
/// cheap enough to run.
bool exact_product_feasible(std::int64_t L, std::size_t count);

}  // namespace rrl
