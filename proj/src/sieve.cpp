#include "cosieve/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "cosieve/galois.hpp"

namespace cosieve {

namespace {

bool is_prime_int(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// exactly one part equal to 2 and every other part odd
bool one_quadratic_rest_odd(const std::map<int, int>& type) {
  if (type.count(2) == 0 || type.at(2) != 1) return false;
  for (auto [d, c] : type)
    if (d != 2 && d % 2 == 0) return false;
  return true;
}

}  // namespace

bool poly_in_ortho_family(const Field& F, OrthoFamily fam, const Poly& f,
                          SplitClass model, SquareClass disc_q,
                          SquareClass fm1_fixed, bool ambient_odd) {
  int N = poly_deg(f);
  if (N < 2) return false;
  FactorizationType t = factorization_type(F, f);
  if (!t.squarefree) return false;

  if (fam == OrthoFamily::F1) {
    if (ambient_odd) return t.degree_multiset == std::map<int, int>{{N, 1}};
    if (model == SplitClass::NonSplit) {
      if (t.degree_multiset != std::map<int, int>{{N, 1}}) return false;
      // falls through to the disc / f(-1) conditions below
    } else if (F.modulus() % 4 == 1) {
      return t.degree_multiset == std::map<int, int>{{N / 2, 2}};
    } else {
      std::map<int, int> want =
          N == 4 ? std::map<int, int>{{2, 2}} : std::map<int, int>{{2, 1}, {N - 2, 1}};
      return t.degree_multiset == want;
    }
  } else if (fam == OrthoFamily::F2) {
    // a monic quadratic (not necessarily irreducible) times distinct
    // irreducible polynomials of odd degrees; when the quadratic splits, its
    // two linear factors appear among the parts, so the type is either
    // "one 2 and the rest odd" or "all odd with at least two linear parts"
    if (!one_quadratic_rest_odd(t.degree_multiset)) {
      bool all_odd = true;
      for (auto [d, c] : t.degree_multiset)
        if (d % 2 == 0) all_odd = false;
      auto it = t.degree_multiset.find(1);
      if (!all_odd || it == t.degree_multiset.end() || it->second < 2)
        return false;
    }
  } else {
    // families 3 and 4 look at the transform h
    if (!is_self_reciprocal(F, f, 1)) return false;
    Poly h = meyn_transform(F, f);
    FactorizationType ht = factorization_type(F, h);
    if (!ht.squarefree) return false;
    if (fam == OrthoFamily::F3) {
      bool hit = false;
      for (auto [d, c] : ht.degree_multiset)
        if (is_prime_int(d) && 4 * d > N) hit = true;
      if (!hit) return false;
    } else {
      if (!one_quadratic_rest_odd(ht.degree_multiset)) return false;
    }
  }

  // shared side conditions: fixed square class at -1 and matching discriminant
  fp fm1 = poly_eval(F, f, F.reduce(-1));
  if (F.legendre(fm1) != fm1_fixed || fm1_fixed == SquareClass::Zero) return false;
  return disc_class_orth(F, f) == disc_q;
}

bool poly_has_sl_type(const Field& F, const Poly& f, const FactorizationType& type) {
  FactorizationType t = factorization_type(F, f);
  return t.squarefree && t.degree_multiset == type.degree_multiset;
}

bool SievingFamily::applicable(int64_t ell, const RingA& ring) const {
  if (ring.is_inverted(ell)) return false;
  if (kind == Kind::EntryNonSquare) return ell % 4 == 1;
  return true;
}

bool membership(const SievingFamily& fam, const Field& F, const MatF& g,
                const MembershipContext& ctx) {
  switch (fam.kind) {
    case SievingFamily::Kind::Ortho: {
      if (!ctx.space) throw std::invalid_argument("orthogonal family needs a quadratic space");
      CosetLabel lab = coset_label(*ctx.space, g);
      if (!(lab == ctx.target)) return false;
      Poly f = charpoly_rev(F, g);
      Poly fred = reduce_charpoly(F, f, lab.det);
      // the f(-1) class imposed on the polynomial side is the target spinor
      // class (N_Spin(g) equals the class of det(1+g) up to fixed squares)
      return poly_in_ortho_family(F, fam.ortho, fred, ctx.space->classify(),
                                  ctx.disc_q, ctx.target.spinor);
    }
    case SievingFamily::Kind::SLFactorType: {
      if (mat_det(F, g) != F.reduce(ctx.det_target)) return false;
      Poly f = charpoly(F, g);
      return poly_has_sl_type(F, f, fam.sl_type);
    }
    case SievingFamily::Kind::EntryNonSquare: {
      if (F.modulus() % 4 != 1)
        throw std::domain_error("square-entry sieving needs l = 1 (mod 4)");
      if (ctx.space && !(coset_label(*ctx.space, g) == ctx.target)) return false;
      return F.legendre(g(fam.entry_i, fam.entry_j)) == SquareClass::NonSquare;
    }
  }
  throw std::logic_error("unknown family kind");
}

HResult saving_factor_H(const std::vector<PrimeTheta>& per_prime) {
  HResult out;
  double var = 0.0;
  for (const auto& p : per_prime) {
    if (p.theta < 0 || p.theta > p.order)
      throw std::invalid_argument("theta outside [0, |G|]");
    if (p.theta == p.order) {
      out.degenerate = true;
      continue;
    }
    mpq_class denom = p.order - p.theta;
    out.value += p.theta / denom;
    if (!p.exact) {
      // d/dtheta [theta/(order-theta)] = order/(order-theta)^2
      double deriv = mpq_class(p.order / (denom * denom)).get_d();
      var += deriv * deriv * p.sigma * p.sigma;
    }
  }
  out.sigma = std::sqrt(var);
  return out;
}

double sieve_exponent(int d, SieveVariant variant) {
  return variant == SieveVariant::Conjugacy ? (3.0 * d + 2.0) / 2.0
                                            : (17.0 * d + 4.0) / 4.0;
}

double optimal_cutoff(double eta, int64_t k, int d) {
  return std::exp(2.0 * static_cast<double>(k) * eta / (3.0 * d + 2.0));
}

double delta_bound(const SieveBoundInputs& inputs) {
  if (inputs.d <= 0 || inputs.eta <= 0 || inputs.L < 2)
    throw std::invalid_argument("need d > 0, eta > 0, L >= 2");
  double A = sieve_exponent(inputs.d, inputs.variant);
  return 1.0 + std::exp(A * std::log(inputs.L) -
                        inputs.eta * static_cast<double>(inputs.k));
}

SieveBound sieve_probability_bound(SieveBoundInputs inputs, const mpq_class& H) {
  if (H <= 0) throw std::domain_error("vacuous bound: H must be positive");
  if (inputs.L == 0.0)
    inputs.L = std::max(2.0, optimal_cutoff(inputs.eta, inputs.k, inputs.d));
  SieveBound out;
  out.L_used = inputs.L;
  out.bound = delta_bound(inputs) / H.get_d();
  out.beta = 2.0 * inputs.eta / (3.0 * inputs.d + 2.0);
  return out;
}

std::pair<double, double> wilson_interval(int64_t count, int64_t trials) {
  if (trials <= 0) return {0.0, 1.0};
  const double z = 1.959963984540054;  // 97.5th normal percentile
  double n = static_cast<double>(trials);
  double p = static_cast<double>(count) / n;
  double z2 = z * z;
  double denom = 1.0 + z2 / n;
  double center = (p + z2 / (2.0 * n)) / denom;
  double half = z / denom * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

namespace {
// one-sided 95% Student t critical values, df = 1..30; 1.645 beyond
double t_crit_95(int df) {
  static const double tab[30] = {
      6.314, 2.920, 2.353, 2.132, 2.015, 1.943, 1.895, 1.860, 1.833, 1.812,
      1.796, 1.782, 1.771, 1.761, 1.753, 1.746, 1.740, 1.734, 1.729, 1.725,
      1.721, 1.717, 1.714, 1.711, 1.708, 1.706, 1.703, 1.701, 1.699, 1.697};
  if (df <= 0) return HUGE_VAL;
  return df <= 30 ? tab[df - 1] : 1.645;
}
}  // namespace

FitResult fit_log_decay(const std::vector<CheckpointStat>& stats) {
  FitResult out;
  std::vector<std::pair<double, double>> pts;
  for (const auto& s : stats)
    if (s.count >= 5)
      pts.emplace_back(static_cast<double>(s.k),
                       std::log(static_cast<double>(s.count) / s.trials));
  out.points = static_cast<int>(pts.size());
  if (pts.size() < 3) return out;
  double n = static_cast<double>(pts.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto [x, y] : pts) { sx += x; sy += y; sxx += x * x; sxy += x * y; }
  double mx = sx / n, my = sy / n;
  double vxx = sxx - n * mx * mx;
  if (vxx <= 0) return out;
  out.slope = (sxy - n * mx * my) / vxx;
  out.intercept = my - out.slope * mx;
  double sse = 0, sst = 0;
  for (auto [x, y] : pts) {
    double e = y - (out.intercept + out.slope * x);
    sse += e * e;
    sst += (y - my) * (y - my);
  }
  out.r2 = sst > 0 ? 1.0 - sse / sst : 1.0;
  double s2 = sse / (n - 2.0);
  out.slope_stderr = std::sqrt(s2 / vxx);
  out.slope_negative_95 =
      out.slope_stderr > 0
          ? out.slope / out.slope_stderr < -t_crit_95(static_cast<int>(n) - 2)
          : out.slope < 0;
  out.valid = true;
  return out;
}

bool is_square_in_A(const mpq_class& x, const RingA& ring) {
  if (x < 0) return false;
  if (x == 0) return true;
  mpz_class num = x.get_num(), den = x.get_den();
  for (auto p : ring.inverted_primes) {
    mpz_class pz(static_cast<long>(p));
    while (num % pz == 0) num /= pz;
    while (den % pz == 0) den /= pz;
  }
  return mpz_perfect_square_p(num.get_mpz_t()) &&
         mpz_perfect_square_p(den.get_mpz_t());
}

namespace {

bool event_occurs(const EventSpec& event, const GroupElem& x,
                  int64_t* undetermined) {
  switch (event.kind) {
    case EventKind::SquareEntry: {
      for (const auto& e : x.matrix.a)
        if (is_square_in_A(e, x.ring)) return true;
      return false;
    }
    case EventKind::Reducible: {
      PolyQ f = reduced_charpoly_A(x);
      QFactorStatus st = q_reducibility(f, event.galois_budget);
      if (st == QFactorStatus::Undetermined) {
        ++*undetermined;
        return false;
      }
      return st == QFactorStatus::Reducible;
    }
    case EventKind::NotMaxGalois: {
      PolyQ f = reduced_charpoly_A(x);
      GaloisKind kind =
          x.kind == GroupKind::SLCoset ? GaloisKind::Sn : GaloisKind::WN;
      return !certify_max_galois(f, kind, event.galois_budget).certified;
    }
  }
  throw std::logic_error("unknown event kind");
}

}  // namespace

ExperimentReport estimate_event_probability(const WalkConfig& config,
                                            const EventSpec& event,
                                            const std::vector<int>& checkpoints,
                                            int threads) {
  std::vector<int> cps = checkpoints;
  std::sort(cps.begin(), cps.end());
  cps.erase(std::unique(cps.begin(), cps.end()), cps.end());
  cps.erase(std::remove_if(cps.begin(), cps.end(),
                           [&](int k) { return k < 0 || k > config.k_max; }),
            cps.end());

  ExperimentReport report;
  report.event = event;
  size_t m = cps.size();
  std::vector<int64_t> counts(m, 0), undet(m, 0);

#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#pragma omp parallel
#endif
  {
    std::vector<int64_t> lc(m, 0), lu(m, 0);
#ifdef _OPENMP
#pragma omp for schedule(dynamic)
#endif
    for (int t = 0; t < config.trials; ++t) {
      Trajectory traj = run_walk(config, t, cps);
      for (size_t i = 0; i < m; ++i)
        if (event_occurs(event, traj.states[i], &lu[i])) ++lc[i];
    }
#ifdef _OPENMP
#pragma omp critical
#endif
    for (size_t i = 0; i < m; ++i) {
      counts[i] += lc[i];
      undet[i] += lu[i];
    }
  }

  for (size_t i = 0; i < m; ++i) {
    CheckpointStat s;
    s.k = cps[i];
    s.trials = config.trials;
    s.count = counts[i];
    s.undetermined = undet[i];
    s.freq = config.trials > 0
                 ? static_cast<double>(counts[i]) / config.trials
                 : 0.0;
    std::tie(s.wilson_lo, s.wilson_hi) = wilson_interval(counts[i], config.trials);
    report.stats.push_back(s);
  }
  report.fit = fit_log_decay(report.stats);
  return report;
}

}  // namespace cosieve
