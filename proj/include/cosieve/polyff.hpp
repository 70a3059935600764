#pragma once
// Polynomials over F_l: coefficients ascending, no trailing zeros.
// Covers the factorization-type machinery (distinct-degree splitting), the
// self-reciprocal structure and the degree-halving substitution
// f(x) = x^{N/2} h(x + 1/x), and the resultant-based discriminant.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "cosieve/ff.hpp"

namespace cosieve {

using Poly = std::vector<fp>;  // p[i] is the coefficient of T^i

struct FactorizationType {
  std::map<int, int> degree_multiset;  // factor degree -> count (of squarefree part)
  bool squarefree = false;

  bool operator==(const FactorizationType&) const = default;
};

Poly poly_norm(const Field& F, Poly p);
inline int poly_deg(const Poly& p) { return static_cast<int>(p.size()) - 1; }  // -1 for zero
Poly poly_add(const Field& F, const Poly& a, const Poly& b);
Poly poly_sub(const Field& F, const Poly& a, const Poly& b);
Poly poly_mul(const Field& F, const Poly& a, const Poly& b);
std::pair<Poly, Poly> poly_divmod(const Field& F, Poly a, const Poly& b);
Poly poly_gcd(const Field& F, Poly a, Poly b);  // monic gcd
Poly poly_deriv(const Field& F, const Poly& a);
fp poly_eval(const Field& F, const Poly& a, fp x);
Poly poly_monic(const Field& F, Poly a);
Poly poly_powmod(const Field& F, Poly base, int64_t e, const Poly& mod);

FactorizationType factorization_type(const Field& F, const Poly& f);
bool is_irreducible(const Field& F, const Poly& f);

// b_0 = 1, b_N = bn, b_{N-i} = bn * b_i. Constant-term-1 convention: these are
// the reversed characteristic polynomials det(1 - Tg) of orthogonal matrices.
bool is_self_reciprocal(const Field& F, const Poly& f, fp bn = 1);

// f monic self-reciprocal (b_N = 1) of even degree N -> the unique monic h of
// degree N/2 with f(x) = x^{N/2} h(x + 1/x). Throws on shape violation.
Poly meyn_transform(const Field& F, const Poly& f);

// Requires h := meyn_transform(f) irreducible; true iff h(2)h(-2) is a
// nonsquare, which by the halving criterion is equivalent to f irreducible.
// nullopt when h is reducible (predicate not applicable; caller must branch).
std::optional<bool> meyn_predict_irreducible(const Field& F, const Poly& f);

// det(T - g) with the forced factor removed: /(T - det_g) if N odd,
// /(T^2 - 1) if N even and det_g = -1, unchanged otherwise.
Poly reduce_charpoly(const Field& F, const Poly& f, int det_g);

fp poly_resultant(const Field& F, Poly a, Poly b);
// (-1)^{n(n-1)/2} Res(f, f') / lc(f); 0 for inseparable f.
fp poly_discriminant(const Field& F, const Poly& f);

// Square class of sign^{N/2} * disc(f) for even-degree f. With sign = +1
// (the convention frozen by the calibration test) this is the normalization
// under which disc(f) = disc(Q) holds exactly for the reversed charpolys of
// orthogonal matrices.
SquareClass disc_class_orth_signed(const Field& F, const Poly& f, int sign);
inline SquareClass disc_class_orth(const Field& F, const Poly& f) {
  return disc_class_orth_signed(F, f, 1);
}

// Visit every f in M_{N,l} with leading coefficient bn (b_0 = 1 fixed):
// the free coefficients are b_1..b_{N/2}.
void for_each_self_reciprocal(const Field& F, int N, fp bn,
                              const std::function<void(const Poly&)>& fn);

}  // namespace cosieve
