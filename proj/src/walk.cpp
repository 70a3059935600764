#include "cosieve/walk.hpp"

#include <algorithm>
#include <stdexcept>

namespace cosieve {

namespace {
uint64_t mix64(uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

MatQ matq_inverse(const MatQ& A) {
  int n = A.n;
  MatQ M = A, I = MatQ::identity(n);
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (M(r, c) != 0) { piv = r; break; }
    if (piv < 0) throw std::invalid_argument("singular matrix");
    for (int j = 0; j < n; ++j) {
      std::swap(M(c, j), M(piv, j));
      std::swap(I(c, j), I(piv, j));
    }
    mpq_class inv = 1 / M(c, c);
    for (int j = 0; j < n; ++j) { M(c, j) *= inv; I(c, j) *= inv; }
    for (int r = 0; r < n; ++r) {
      if (r == c || M(r, c) == 0) continue;
      mpq_class f = M(r, c);
      for (int j = 0; j < n; ++j) { M(r, j) -= f * M(c, j); I(r, j) -= f * I(c, j); }
    }
  }
  return I;
}
}  // namespace

uint64_t rng_draw(uint64_t seed, uint64_t trial, uint64_t step) {
  uint64_t h = mix64(seed);
  h = mix64(h ^ (trial * 0xd1342543de82ef95ULL));
  h = mix64(h ^ (step * 0xaf251af3b0f025b5ULL));
  return h;
}

void GeneratorSet::validate() const {
  if (elements.empty() || elements.size() != weights.size())
    throw std::invalid_argument("generator/weight size mismatch");
  mpq_class sum = 0;
  for (const auto& w : weights) {
    if (w <= 0) throw std::invalid_argument("weights must be positive");
    sum += w;
  }
  if (sum != 1) throw std::invalid_argument("weights must sum to 1");
  // closed under inverse with matching weights
  for (size_t i = 0; i < elements.size(); ++i) {
    MatQ inv = matq_inverse(elements[i].matrix);
    bool found = false;
    for (size_t j = 0; j < elements.size(); ++j)
      if (elements[j].matrix == inv) {
        if (weights[i] != weights[j])
          throw std::invalid_argument("p_s != p_{s^-1}");
        found = true;
        break;
      }
    if (!found) throw std::invalid_argument("generator set not closed under inverse");
  }
  if (!odd_relation.empty()) {
    if (odd_relation.size() % 2 == 0)
      throw std::invalid_argument("recorded relation has even length");
    MatQ p = MatQ::identity(elements[0].matrix.n);
    for (int idx : odd_relation) p = matq_mul(p, elements[idx].matrix);
    if (p != MatQ::identity(elements[0].matrix.n))
      throw std::invalid_argument("recorded relation is not a relation");
  }
}

std::vector<uint64_t> GeneratorSet::cdf_boundaries() const {
  std::vector<uint64_t> out;
  mpq_class cum = 0;
  mpz_class two64 = mpz_class(1) << 64;
  for (const auto& w : weights) {
    cum += w;
    mpz_class b = (cum.get_num() * two64) / cum.get_den();  // floor(cum * 2^64)
    // the last interval absorbs the sub-2^-64 sliver (see sample())
    mpz_class capped = b >= two64 ? two64 - 1 : b;
    out.push_back(static_cast<uint64_t>(capped.get_ui()));
  }
  return out;
}

int GeneratorSet::sample(uint64_t draw) const {
  auto b = cdf_boundaries();
  for (size_t i = 0; i + 1 < b.size(); ++i)
    if (draw < b[i]) return static_cast<int>(i);
  return static_cast<int>(b.size()) - 1;
}

GeneratorSet sl_default_generators(int n, RingA ring) {
  GeneratorSet s;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      s.elements.push_back(transvection(n, i, j, 1, ring));
      s.elements.push_back(transvection(n, i, j, -1, ring));
    }
  mpq_class w(1, static_cast<long>(s.elements.size()));
  s.weights.assign(s.elements.size(), w);
  if (n >= 3) {
    // [T_{1,2}(1), T_{2,3}(1)] T_{1,3}(1)^{-1} = Id, length 5
    auto idx = [&](int i, int j, int sign) {
      for (size_t k = 0; k < s.elements.size(); ++k) {
        MatQ want = MatQ::identity(n);
        want(i, j) = sign;
        if (s.elements[k].matrix == want) return static_cast<int>(k);
      }
      throw std::logic_error("generator lookup failed");
    };
    s.odd_relation = {idx(0, 1, 1), idx(1, 2, 1), idx(0, 1, -1), idx(1, 2, -1), idx(0, 2, -1)};
  }
  s.validate();
  return s;
}

GeneratorSet omega_default_generators(int n, RingA ring) {
  GeneratorSet s;
  // orthogonal isotropic pairs: (x_i, x_j), (x_i, y_j), (y_i, x_j), (y_i, y_j), i != j
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      for (auto [u, v] : {std::pair{i, j}, {i, n + j}, {n + i, j}, {n + i, n + j}}) {
        s.elements.push_back(eichler_generator(n, u, v, 1, ring));
        s.elements.push_back(eichler_generator(n, u, v, -1, ring));
      }
    }
  mpq_class w(1, static_cast<long>(s.elements.size()));
  s.weights.assign(s.elements.size(), w);
  if (n >= 3) {
    // bounded search for an odd commutator-style relation of length 5
    int m = static_cast<int>(s.elements.size());
    int N = 2 * n;
    bool found = false;
    for (int a = 0; a < m && !found; ++a)
      for (int b = 0; b < m && !found; ++b) {
        MatQ comm = matq_mul(matq_mul(s.elements[a].matrix, s.elements[b].matrix),
                             matq_mul(matq_inverse(s.elements[a].matrix),
                                      matq_inverse(s.elements[b].matrix)));
        if (comm == MatQ::identity(N)) continue;
        for (int c = 0; c < m; ++c)
          if (matq_mul(comm, s.elements[c].matrix) == MatQ::identity(N)) {
            auto find = [&](const MatQ& mat) {
              for (int k = 0; k < m; ++k)
                if (s.elements[k].matrix == mat) return k;
              throw std::logic_error("inverse generator missing");
            };
            s.odd_relation = {a, b, find(matq_inverse(s.elements[a].matrix)),
                              find(matq_inverse(s.elements[b].matrix)), c};
            found = true;
            break;
          }
      }
  }
  s.validate();
  return s;
}

Trajectory run_walk(const WalkConfig& config, int trial, std::vector<int> checkpoints) {
  std::sort(checkpoints.begin(), checkpoints.end());
  Trajectory t;
  t.trial_id = trial;
  t.checkpoints = checkpoints;
  GroupElem x = config.alpha;
  size_t ci = 0;
  for (int k = 0; k <= config.k_max; ++k) {
    if (k > 0) {
      int pick = config.generators.sample(rng_draw(config.seed, trial, k));
      x = group_mul(x, config.generators.elements[pick]);
    }
    while (ci < checkpoints.size() && checkpoints[ci] == k) {
      t.states.push_back(x);
      ++ci;
    }
  }
  return t;
}

void run_walk_mod(const WalkConfig& config, int trial, const Field& F,
                  const std::vector<int>& checkpoints,
                  const std::function<void(int, const MatF&)>& visit) {
  std::vector<MatF> gens;
  gens.reserve(config.generators.elements.size());
  for (const auto& g : config.generators.elements) gens.push_back(reduce_mod(g, F));
  MatF x = reduce_mod(config.alpha, F);
  std::vector<int> cps = checkpoints;
  std::sort(cps.begin(), cps.end());
  size_t ci = 0;
  for (int k = 0; k <= config.k_max; ++k) {
    if (k > 0) {
      int pick = config.generators.sample(rng_draw(config.seed, trial, k));
      x = mat_mul(F, x, gens[pick]);
    }
    while (ci < cps.size() && cps[ci] == k) {
      visit(k, x);
      ++ci;
    }
  }
}

std::vector<int> geometric_checkpoints(int k_max) {
  std::vector<int> out{0};
  for (int k = 1; k <= k_max; k *= 2) out.push_back(k);
  if (out.back() != k_max && k_max > 0) out.push_back(k_max);
  return out;
}

}  // namespace cosieve
