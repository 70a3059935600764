#pragma once
// Brute-force oracles: exhaustive enumeration of orthogonal groups over small
// fields and of self-reciprocal polynomial families, with exact comparisons
// against every counting lemma the sieve relies on. All right-hand sides are
// evaluated exactly (rational plus an optional sqrt term) -- no floating
// point in any pass/fail decision.

#include <gmpxx.h>

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cosieve/sieve.hpp"

namespace cosieve {

struct EnumBudget {
  int64_t max_matrix_group_size = 10'000'000;
  int64_t max_poly_space = 10'000'000;  // cap on l^{N/2}
};

// Exact value a + b*sqrt(s) with a, b rational and s a nonsquare positive
// integer (s = 1 degenerates to a rational).
struct SqrtBound {
  mpq_class a, b;
  int64_t s = 1;
};

// t >= a + b*sqrt(s) resp. t <= a + b*sqrt(s), decided by squaring (exact).
bool value_geq(const mpq_class& t, const SqrtBound& r);
bool value_leq(const mpq_class& t, const SqrtBound& r);
bool bound_positive(const SqrtBound& r);
std::string bound_str(const SqrtBound& r);

struct DensityRecord {
  std::string lemma;
  int N = 0;
  int64_t ell = 0;
  std::string model;  // "split" / "nonsplit" / "" when not applicable
  std::string label;  // family / epsilon-branch tag
  mpq_class lhs;      // exact count or ratio
  SqrtBound rhs;
  bool in_regime = true;
  bool pass = false;
  std::string note;
};

// Classical group orders.
mpz_class order_orthogonal(int N, int64_t ell, SplitClass model);  // |O|
mpz_class order_sl(int n, int64_t ell);

// ---------------------------------------------------------------------------
// Enumeration (isometry-extension backtracking; never a full l^{N^2} scan)

// Visits every g in O(V) exactly once. Returns false when the group order
// exceeds the budget (nothing is visited in that case).
bool enumerate_orthogonal(const QuadSpace& V, const EnumBudget& budget,
                          const std::function<void(const MatF&)>& visit);

// Same stream partitioned by the image of the first basis vector; visit is
// called concurrently with the owning thread's index.
bool enumerate_orthogonal_parallel(const QuadSpace& V, const EnumBudget& budget,
                                   int threads,
                                   const std::function<void(int, const MatF&)>& visit);

// Uniform sample via the same backtracking tree: every partial isometry has
// the same number of completions (Witt extension), so independent uniform
// choices per level give a uniform group element. Deterministic in
// (seed, index).
MatF sample_orthogonal(const QuadSpace& V, uint64_t seed, uint64_t index);

void enumerate_sl2(const Field& F, const std::function<void(const MatF&)>& visit);
MatF sample_sl2(const Field& F, uint64_t seed, uint64_t index);

// ---------------------------------------------------------------------------
// Polynomial family counts (section-2 lemmas)

struct PolyFamilySpec {
  enum class Kind { K, Equidist, Theta3, Theta4 } kind = Kind::K;
  int eps = 0;  // K: the reduction branch (0 or 1), even N
  SquareClass eps1 = SquareClass::Square;  // Equidist: class of f(1); Theta3/4: h(2)
  SquareClass eps2 = SquareClass::Square;  // Equidist: class of f(-1); Theta3/4: h(-2)
};

DensityRecord count_poly_family(int N, int64_t ell, const PolyFamilySpec& spec,
                                const EnumBudget& budget);

// ---------------------------------------------------------------------------
// Matrix-side census and validators

// Counts of group elements per (reversed charpoly, det, spinor).
struct CharpolyCensus {
  int N = 0;
  int64_t ell = 0;
  SplitClass model = SplitClass::Split;
  // key: det(1-Tg) coefficients; value indexed [det != 1][spinor != Square]
  std::map<Poly, std::array<int64_t, 4>> buckets;
  int64_t total = 0;

  static int slot(const CosetLabel& lab) {
    return (lab.det == 1 ? 0 : 2) + (lab.spinor == SquareClass::Square ? 0 : 1);
  }
};

std::optional<CharpolyCensus> charpoly_census(const QuadSpace& V,
                                              const EnumBudget& budget,
                                              int threads = 0);

int64_t count_matrices_with_charpoly(const CharpolyCensus& census, const Poly& f,
                                     std::optional<CosetLabel> label);

// Existence of semisimple elements: every monic separable f in M_{N,l} with
// disc(f) = disc(Q) is realized by some element of SO. One record per
// qualifying f (lhs = realizing count, rhs = 1).
std::vector<DensityRecord> verify_exist_ss(const QuadSpace& V,
                                           const CharpolyCensus& census,
                                           int disc_sign);

struct CalibrationResult {
  int chosen_sign = 0;  // +1 / -1; 0 when neither or both pass everywhere
  bool unique = false;
  std::vector<DensityRecord> records;  // one per (sign, N, ell, model): lhs = #unrealized
};

CalibrationResult calibrate_disc_convention(
    const std::vector<std::tuple<int, int64_t, SplitClass>>& points,
    const EnumBudget& budget, int threads = 0);

// The four family ratios |Theta^(i)|/|Omega| against the explicit proof
// displays, plus the poly-to-matrix chain bound with the exhaustive
// polynomial count. Both f(-1) branches are reported.
std::vector<DensityRecord> verify_ratio_lemmas(const QuadSpace& V,
                                               const CharpolyCensus& census,
                                               const EnumBudget& budget);

// SL(2) factorization-type densities (informational below the l > 16n^2
// regime threshold).
std::vector<DensityRecord> verify_sl_types(const Field& F);

// (a) |Theta^SO| = 2|Theta| for the square-entry sets under the explicit
// spinor-swapping involution (l = 1 mod 4, diagonal split-class model);
// (b) exact character sum over SL(2,F_l) of chi(g_11) against l^{5/2}.
std::vector<DensityRecord> verify_involution_and_charsum(int64_t ell,
                                                         const EnumBudget& budget);

// Enumerated size vs the closed-form order.
DensityRecord verify_group_order(const QuadSpace& V, const EnumBudget& budget,
                                 int threads = 0);

}  // namespace cosieve
