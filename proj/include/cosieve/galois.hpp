#pragma once
// Certification of maximal Galois groups over Q through factorization
// patterns mod many primes, plus a one-sided exact reducibility decision for
// integral polynomials of small degree.

#include <gmpxx.h>

#include <string>
#include <vector>

#include "cosieve/polyff.hpp"

namespace cosieve {

using PolyQ = std::vector<mpq_class>;  // ascending coefficients

enum class QFactorStatus { Irreducible, Reducible, Undetermined };

// Exact decision where possible: rational root test (complete for degree <= 3
// after primitivization), exact quadratic-factor solve (complete for monic
// integral degree 4 and 5), and the degree-subset-sum certification over
// squarefree reductions mod odd primes <= prime_budget. Degrees where none of
// these conclude return Undetermined -- never silently classified.
QFactorStatus q_reducibility(const PolyQ& f, int64_t prime_budget);

enum class GaloisKind { Sn, WN };

struct GaloisCriterion {
  std::string name;
  int64_t witness = 0;  // prime, 0 when none found
  std::string detail;   // factorization type / side classes at the witness
};

struct GaloisVerdict {
  bool certified = false;
  std::vector<GaloisCriterion> criteria;
  std::vector<int64_t> witnesses() const;
};

// Sn: the Jordan criteria -- an irreducible type {n}, a type with exactly one
// part 2 and all other parts odd and pairwise distinct, and a part of prime
// size > n/2; each witnessed at a squarefree reduction. WN (f monic
// self-reciprocal of even degree N): the four family shapes -- irreducible;
// one irreducible quadratic times distinct odd-degree irreducibles; transform
// h separable with an irreducible factor of prime degree > N/4; h separable
// with exactly one irreducible quadratic factor and no other even-degree
// factor. disc(f) and f(-1) square classes at each witness are recorded so a
// sieve caller can match them against its per-prime labels. A Certified
// verdict is cross-checked for soundness: the intersection of achievable
// factor-degree subset sums over all witnessed types must be {0, deg f}.
GaloisVerdict certify_max_galois(const PolyQ& f, GaloisKind kind,
                                 int64_t prime_budget);

}  // namespace cosieve
