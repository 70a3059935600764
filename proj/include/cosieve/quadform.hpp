#pragma once
// Quadratic spaces over F_l: Gram matrices, reflections, Cartan-Dieudonne
// decomposition, spinor norm (two independent algorithms), coset labels, and
// characteristic polynomials of orthogonal matrices.
//
// Convention: Phi(x,y) = x^T gram y and Q(v) = Phi(v,v). The reflection and
// spinor formulas below are stated in this convention; the exhaustive
// Zassenhaus cross-check in the tests pins it (a convention mismatch flips a
// global square class and fails that test).

#include <cstdint>
#include <optional>
#include <vector>

#include "cosieve/ff.hpp"
#include "cosieve/polyff.hpp"

namespace cosieve {

// Row-major square matrix over F_l.
struct MatF {
  int n = 0;
  std::vector<fp> a;

  MatF() = default;
  MatF(int dim, fp fill = 0) : n(dim), a(static_cast<size_t>(dim) * dim, fill) {}
  static MatF identity(int dim) {
    MatF m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1;
    return m;
  }
  fp& operator()(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
  fp operator()(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }
  bool operator==(const MatF&) const = default;
};

MatF mat_mul(const Field& F, const MatF& A, const MatF& B);
MatF mat_transpose(const MatF& A);
fp mat_det(const Field& F, MatF A);
std::vector<fp> mat_vec(const Field& F, const MatF& A, const std::vector<fp>& x);
// Kernel basis of A (as row vectors).
std::vector<std::vector<fp>> mat_nullspace(const Field& F, MatF A);

enum class SplitClass { Split, NonSplit, OddDim };

struct QuadSpace {
  Field F;
  MatF gram;

  QuadSpace(Field field, MatF g);

  int dim() const { return gram.n; }
  fp phi(const std::vector<fp>& x, const std::vector<fp>& y) const;
  fp q(const std::vector<fp>& v) const { return phi(v, v); }
  bool is_orthogonal(const MatF& g) const;  // g^T gram g == gram
  SplitClass classify() const;  // Split iff (-1)^n det(gram) is a square (dim 2n)

  // Hyperbolic [[0,I],[I,0]] (always split).
  static QuadSpace hyperbolic(const Field& F, int half_rank);
  // Hyperbolic with the first plane replaced by diag(1, -eps0): the nonsplit
  // model in even dimension.
  static QuadSpace nonsplit(const Field& F, int half_rank);
  static QuadSpace diagonal(const Field& F, const std::vector<fp>& d);
};

struct CosetLabel {
  int det = 1;                                 // +1 / -1
  SquareClass spinor = SquareClass::Square;    // never Zero
  bool operator==(const CosetLabel&) const = default;
};

// r_v(x) = x - (2 Phi(x,v)/Q(v)) v; requires Q(v) != 0.
MatF reflection(const QuadSpace& V, const std::vector<fp>& v);

// Non-isotropic vectors v_1..v_k (k <= dim) with g = r_{v_1} ... r_{v_k}.
// Textbook recursion: restrict to the orthogonal complement of a
// non-isotropic fixed vector when one exists; otherwise reflect along
// (g-1)x for a non-isotropic x with Q((g-1)x) != 0 (so the next step has a
// non-isotropic fixed vector); the remaining exceptional case composes with
// an arbitrary reflection, after which det = -1 excludes a repeat.
std::vector<std::vector<fp>> cartan_dieudonne(const QuadSpace& V, const MatF& g);

// legendre(det((g+I)/2)); nullopt when -1 is an eigenvalue.
std::optional<SquareClass> zassenhaus_spinor(const QuadSpace& V, const MatF& g);

// Zassenhaus fast path; falls back to multiplying by reflections until -1 is
// no longer an eigenvalue, and finally to the full decomposition.
SquareClass spinor_norm(const QuadSpace& V, const MatF& g);

CosetLabel coset_label(const QuadSpace& V, const MatF& g);

// Ordinary characteristic polynomial det(T - g), monic, via the
// division-free Berkowitz recurrence (valid over any F_l; naive fraction-free
// elimination divides by small integers that can vanish mod l).
Poly charpoly(const Field& F, const MatF& g);
// Reversed characteristic polynomial det(1 - Tg): coefficient reversal.
Poly charpoly_rev(const Field& F, const MatF& g);

}  // namespace cosieve
