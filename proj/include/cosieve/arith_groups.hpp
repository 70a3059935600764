#pragma once
// Exact matrix groups over A = Z[1/P] with P a finite explicit set of primes:
// transvection and Eichler generator families, coset representatives, the
// reduction maps into the finite groups, and reduced characteristic
// polynomials. Everything here is exact GMP rational arithmetic.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "cosieve/quadform.hpp"

namespace cosieve {

struct MatQ {
  int n = 0;
  std::vector<mpq_class> a;

  MatQ() = default;
  explicit MatQ(int dim) : n(dim), a(static_cast<size_t>(dim) * dim, mpq_class(0)) {}
  static MatQ identity(int dim) {
    MatQ m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1;
    return m;
  }
  mpq_class& operator()(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
  const mpq_class& operator()(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }
  bool operator==(const MatQ&) const = default;
};

MatQ matq_mul(const MatQ& A, const MatQ& B);
mpq_class matq_det(MatQ A);
// Monic det(T - g), Berkowitz recurrence (exact).
std::vector<mpq_class> charpoly_q(const MatQ& g);

struct RingA {
  std::vector<int64_t> inverted_primes;  // finite explicit P

  bool is_inverted(int64_t p) const {
    for (auto q : inverted_primes)
      if (q == p) return true;
    return false;
  }
  // denominator's prime factors all lie in P
  bool contains(const mpq_class& x) const;
};

enum class GroupKind { SLCoset, OmegaCoset };

struct GroupElem {
  MatQ matrix;
  RingA ring;
  GroupKind kind = GroupKind::SLCoset;
  // SLCoset: target determinant D (a unit of A).
  mpq_class det_target = 1;
  // OmegaCoset: hyperbolic rank and the (det, spinor) label; spinor square
  // class over Q carried as a squarefree integer representative.
  int hyp_rank = 0;
  mpz_class spinor_rep = 1;

  void validate() const;  // throws on any invariant violation
};

// Identity plus a in entry (i,j); det = 1.
GroupElem transvection(int n, int i, int j, const mpq_class& a, RingA ring);

// x -> x + a Phi(x,u) v - a Phi(x,v) u for u,v isotropic hyperbolic basis
// vectors with Phi(u,v) = 0. Indices 0..2n-1 into the basis
// (x_1..x_n, y_1..y_n); construction checks form preservation, det = 1 and
// unipotence (hence trivial spinor class).
GroupElem eichler_generator(int n, int u_idx, int v_idx, const mpz_class& a, RingA ring);

// diag(D, 1, .., 1).
GroupElem coset_rep_sl(int n, const mpq_class& D, RingA ring);

// Identity for the trivial label; for (+1, NonSquare) the product
// r_{x1+y1} r_{x1-y1} = diag(-1,1,..) negating the first hyperbolic plane,
// with Q(u)Q(v) = -4, i.e. squarefree representative -1.
GroupElem coset_rep_omega(int n, bool nontrivial_spinor, RingA ring);

MatQ hyperbolic_gram_q(int n);
mpq_class phi_q(const MatQ& gram, const std::vector<mpq_class>& x,
                const std::vector<mpq_class>& y);

GroupElem group_mul(const GroupElem& g, const GroupElem& h);

// Entrywise reduction with denominator inversion mod l. Requires l odd,
// l not in P, and (Omega case) l not dividing the spinor representative.
MatF reduce_mod(const GroupElem& g, const Field& F);

// det(T - g) with the forced factor removed per the orthogonal parity/det
// case split; the plain charpoly for the special linear kind.
std::vector<mpq_class> reduced_charpoly_A(const GroupElem& g);

mpz_class squarefree_part(mpz_class x);

}  // namespace cosieve
