#pragma once
// Arithmetic in the prime field F_l for small odd primes l.
//
// Values are plain int64_t residues in [0, l); the modulus travels alongside
// in a small Field handle rather than per element -- the enumeration kernels
// churn through billions of residues and a per-element modulus would double
// the working set. Debug builds assert moduli match at every mixing point via
// Field::check.

#include <cassert>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace cosieve {

enum class SquareClass : int8_t { Zero = 0, Square = 1, NonSquare = -1 };

inline SquareClass operator*(SquareClass a, SquareClass b) {
  return static_cast<SquareClass>(static_cast<int>(a) * static_cast<int>(b));
}

using fp = int64_t;

class Field {
 public:
  explicit Field(int64_t ell) : l_(ell) {
    if (ell < 3 || ell % 2 == 0 || !is_prime(ell))
      throw std::invalid_argument("modulus must be an odd prime");
  }

  int64_t modulus() const { return l_; }

  fp reduce(int64_t a) const {
    int64_t r = a % l_;
    return r < 0 ? r + l_ : r;
  }
  fp add(fp a, fp b) const { fp r = a + b; return r >= l_ ? r - l_ : r; }
  fp sub(fp a, fp b) const { fp r = a - b; return r < 0 ? r + l_ : r; }
  fp neg(fp a) const { return a == 0 ? 0 : l_ - a; }
  fp mul(fp a, fp b) const { return (a * b) % l_; }

  fp pow(fp a, int64_t e) const {
    fp r = 1, base = a;
    while (e) {
      if (e & 1) r = mul(r, base);
      base = mul(base, base);
      e >>= 1;
    }
    return r;
  }

  fp inv(fp a) const {
    if (a == 0) throw std::domain_error("inverse of zero");
    return pow(a, l_ - 2);
  }

  // Euler criterion.
  SquareClass legendre(fp a) const {
    if (a % l_ == 0) return SquareClass::Zero;
    return pow(reduce(a), (l_ - 1) / 2) == 1 ? SquareClass::Square
                                             : SquareClass::NonSquare;
  }

  // Smaller of the two roots, for determinism. Exhaustive search: the only
  // regime used is l < 1000.
  std::optional<fp> sqrt_if_square(fp a) const {
    a = reduce(a);
    if (a == 0) return fp{0};
    for (fp r = 1; 2 * r <= l_; ++r)
      if (mul(r, r) == a) return r;
    return std::nullopt;
  }

  // Smallest nonsquare residue (the paper's epsilon_0).
  fp nonsquare() const {
    for (fp a = 2; a < l_; ++a)
      if (legendre(a) == SquareClass::NonSquare) return a;
    throw std::logic_error("no nonsquare found");  // unreachable for l >= 3
  }

  static bool is_prime(int64_t n) {
    if (n < 2) return false;
    for (int64_t d = 2; d * d <= n; ++d)
      if (n % d == 0) return false;
    return true;
  }

  bool operator==(const Field& o) const { return l_ == o.l_; }

 private:
  int64_t l_;
};

}  // namespace cosieve
