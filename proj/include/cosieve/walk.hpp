#pragma once
// Left-invariant random walk X_0 = alpha, X_{k+1} = X_k xi_{k+1} with i.i.d.
// symmetric steps. Sampling is a counter-based deterministic stream keyed by
// (seed, trial, step): trials are independent and reproducible in parallel.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "cosieve/arith_groups.hpp"

namespace cosieve {

// SplitMix64-style avalanche over the (seed, trial, step) key.
uint64_t rng_draw(uint64_t seed, uint64_t trial, uint64_t step);

struct GeneratorSet {
  std::vector<GroupElem> elements;
  std::vector<mpq_class> weights;  // positive, sum to 1, p_s = p_{s^-1}
  // Indices of an odd-length relation (product of the listed generators equals
  // the identity), when one was found; machine-checked at construction.
  std::vector<int> odd_relation;

  void validate() const;
  // 64-bit inverse-CDF boundaries: draw u picks the first i with u < bound[i].
  // The sliver below 2^-64 per boundary goes to the last interval.
  std::vector<uint64_t> cdf_boundaries() const;
  int sample(uint64_t draw) const;
};

// Defaults: {T_{i,j}(+-1)} with uniform weights.
GeneratorSet sl_default_generators(int n, RingA ring);
// Defaults: {E_{u,v}(+-1)} over the orthogonal isotropic index pairs.
GeneratorSet omega_default_generators(int n, RingA ring);

struct WalkConfig {
  GeneratorSet generators;
  GroupElem alpha;
  int k_max = 0;
  int trials = 1;
  uint64_t seed = 0;
};

struct Trajectory {
  std::vector<int> checkpoints;
  std::vector<GroupElem> states;  // states[i] = X_{checkpoints[i]}
  int trial_id = 0;
};

// Exact product over A; deterministic given (config, trial).
Trajectory run_walk(const WalkConfig& config, int trial, std::vector<int> checkpoints);

// Mod-l fast path: reduce the generators once and multiply in the finite
// group; calls visit(k, state) at each checkpoint.
void run_walk_mod(const WalkConfig& config, int trial, const Field& F,
                  const std::vector<int>& checkpoints,
                  const std::function<void(int, const MatF&)>& visit);

std::vector<int> geometric_checkpoints(int k_max);

}  // namespace cosieve
