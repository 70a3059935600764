#pragma once
// Sieving sets and the large-sieve bound machinery: the four orthogonal
// polynomial families, SL factorization-type sets, square-entry sets, the
// saving factor H, the Delta-bound evaluators, and Monte Carlo estimation of
// event probabilities along random walks.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cosieve/quadform.hpp"
#include "cosieve/walk.hpp"

namespace cosieve {

// ---------------------------------------------------------------------------
// Families

enum class OrthoFamily { F1 = 1, F2 = 2, F3 = 3, F4 = 4 };

// Polynomial-level predicate for f in M_{N,l} (reversed charpolys, reduced).
// model/disc_q describe the reduced quadratic space; fm1_fixed is the imposed
// square class of f(-1). Family 1 in the split and odd-dimension cases carries
// no disc or f(-1) condition; all other branches require both.
bool poly_in_ortho_family(const Field& F, OrthoFamily fam, const Poly& f,
                          SplitClass model, SquareClass disc_q,
                          SquareClass fm1_fixed, bool ambient_odd = false);

// Factorization type of a monic separable f (false if not squarefree).
bool poly_has_sl_type(const Field& F, const Poly& f, const FactorizationType& type);

struct SievingFamily {
  enum class Kind { Ortho, SLFactorType, EntryNonSquare };
  Kind kind = Kind::Ortho;
  OrthoFamily ortho = OrthoFamily::F1;
  FactorizationType sl_type;     // SLFactorType
  int entry_i = 0, entry_j = 0;  // EntryNonSquare, 0-based

  // Lambda: the prime must not be inverted in A; EntryNonSquare additionally
  // requires l = 1 (mod 4) (the involution argument needs it).
  bool applicable(int64_t ell, const RingA& ring) const;
};

struct MembershipContext {
  const QuadSpace* space = nullptr;  // Ortho / EntryNonSquare over SO
  CosetLabel target;                 // (eps1, eps2) = coset_label(rho_l(alpha))
  SquareClass disc_q = SquareClass::Square;
  fp det_target = 1;                 // SLFactorType: det rho_l(alpha)
};

// Exact membership of g in the realized sieving set Theta_l. Throws
// std::domain_error when l fails the family's applicability predicate.
bool membership(const SievingFamily& fam, const Field& F, const MatF& g,
                const MembershipContext& ctx);

// ---------------------------------------------------------------------------
// Saving factor H and Delta bounds

struct PrimeTheta {
  int64_t ell = 0;
  mpq_class theta;   // |Theta_l| (exact or estimated)
  mpq_class order;   // |G_l^g|
  double sigma = 0.0;  // stddev of theta when sampled
  bool exact = true;
};

struct HResult {
  mpq_class value;       // sum theta/(order - theta)
  double sigma = 0.0;    // propagated from sampled terms
  bool degenerate = false;  // some theta == order
};

HResult saving_factor_H(const std::vector<PrimeTheta>& per_prime);

enum class SieveVariant { Conjugacy, NonConjugacy };

struct SieveBoundInputs {
  int d = 0;          // dim of the underlying algebraic group
  double eta = 0.0;   // exogenous spectral-gap decay rate
  double L = 0.0;     // cutoff; 0 selects exp(2 k eta / (3d+2))
  int64_t k = 0;
  SieveVariant variant = SieveVariant::Conjugacy;
};

// A = (3d+2)/2 (conjugacy) or A' = (17d+4)/4 (non-conjugacy).
double sieve_exponent(int d, SieveVariant variant);
double optimal_cutoff(double eta, int64_t k, int d);
// 1 + L^A exp(-eta k).
double delta_bound(const SieveBoundInputs& inputs);

struct SieveBound {
  double bound = 0.0;   // delta_bound * H^{-1}
  double L_used = 0.0;
  double beta = 0.0;    // implied decay exponent 2 eta / (3d+2)
};

// Throws std::domain_error when H <= 0 (vacuous bound).
SieveBound sieve_probability_bound(SieveBoundInputs inputs, const mpq_class& H);

// ---------------------------------------------------------------------------
// Walk-side event estimation

enum class EventKind { Reducible, NotMaxGalois, SquareEntry };

struct EventSpec {
  EventKind kind = EventKind::Reducible;
  int64_t galois_budget = 200;  // NotMaxGalois: certifier prime budget
};

struct CheckpointStat {
  int k = 0;
  int64_t trials = 0;
  int64_t count = 0;         // event occurrences
  int64_t undetermined = 0;  // reducibility left undecided at budget
  double freq = 0.0, wilson_lo = 0.0, wilson_hi = 0.0;
};

struct FitResult {
  bool valid = false;   // >= 3 usable checkpoints
  double slope = 0.0, intercept = 0.0, r2 = 0.0;
  double slope_stderr = 0.0;
  bool slope_negative_95 = false;  // one-sided t-test at 95%
  int points = 0;
};

struct ExperimentReport {
  EventSpec event;
  std::vector<CheckpointStat> stats;
  FitResult fit;
};

// Wilson 95% score interval.
std::pair<double, double> wilson_interval(int64_t count, int64_t trials);

// Least squares on (k, ln freq) over checkpoints with count >= 5.
FitResult fit_log_decay(const std::vector<CheckpointStat>& stats);

// Runs config.trials walks (OpenMP over trials), evaluating the event exactly
// over A at each checkpoint. Deterministic given (config, event, checkpoints).
ExperimentReport estimate_event_probability(const WalkConfig& config,
                                            const EventSpec& event,
                                            const std::vector<int>& checkpoints,
                                            int threads = 0);

// Exact square test in A = Z[1/P]: x = r^2 for some r in A iff x >= 0 and the
// prime factorization of x has even exponents outside P. For the default
// P = {} this is the plain perfect-square test on numerator and denominator.
bool is_square_in_A(const mpq_class& x, const RingA& ring);

}  // namespace cosieve
