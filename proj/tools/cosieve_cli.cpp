// Command-line front end: walk experiments, exhaustive density verification,
// Galois certification, and sieve-bound tables. All file outputs are
// byte-deterministic given (config, seed).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "cosieve/density.hpp"
#include "cosieve/galois.hpp"
#include "cosieve/report.hpp"

namespace {

using namespace cosieve;

constexpr int kExitConfig = 2;
constexpr int kExitBudget = 3;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config: " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return j;
}

void reject_unknown(const Json& j, const std::vector<std::string>& allowed,
                    const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

template <typename T>
T get_or(const Json& j, const std::string& key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "' has the wrong type");
  }
}

template <typename T>
T require(const Json& j, const std::string& key) {
  if (!j.contains(key)) throw ConfigError("missing required key '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "' has the wrong type");
  }
}

int default_threads() {
  if (const char* env = std::getenv("COSIEVE_THREADS")) return std::atoi(env);
  return 0;
}

// ---------------------------------------------------------------------------
// Polynomial parsing: sums of c*T^k with exact rational c

mpq_class parse_rational(const std::string& s) {
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw ConfigError("bad rational: " + s);
  q.canonicalize();
  return q;
}

PolyQ parse_poly(const std::string& text) {
  PolyQ coeffs;
  auto add_term = [&](const mpq_class& c, int deg) {
    if (deg < 0 || deg > 64) throw ConfigError("degree out of range");
    if (coeffs.size() <= static_cast<size_t>(deg)) coeffs.resize(deg + 1, 0);
    coeffs[deg] += c;
  };
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw ConfigError("empty polynomial");
  size_t i = 0;
  while (i < s.size()) {
    int sign = 1;
    while (i < s.size() && (s[i] == '+' || s[i] == '-')) {
      if (s[i] == '-') sign = -sign;
      ++i;
    }
    if (i >= s.size()) throw ConfigError("dangling sign in polynomial");
    std::string num;
    while (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '/'))
      num += s[i++];
    if (i < s.size() && s[i] == '*') ++i;
    mpq_class c = num.empty() ? mpq_class(1) : parse_rational(num);
    int deg = 0;
    if (i < s.size() && (s[i] == 'T' || s[i] == 't' || s[i] == 'x' || s[i] == 'X')) {
      ++i;
      deg = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        std::string e;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) e += s[i++];
        if (e.empty()) throw ConfigError("missing exponent");
        deg = std::stoi(e);
      }
    } else if (num.empty()) {
      throw ConfigError("unexpected character in polynomial: " + s.substr(i, 1));
    }
    add_term(sign * c, deg);
  }
  while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
  if (coeffs.empty()) throw ConfigError("zero polynomial");
  return coeffs;
}

// ---------------------------------------------------------------------------
// walk-experiment

EventSpec parse_event(const Json& cfg) {
  EventSpec ev;
  std::string name = require<std::string>(cfg, "event");
  if (name == "reducible") ev.kind = EventKind::Reducible;
  else if (name == "not_max_galois") ev.kind = EventKind::NotMaxGalois;
  else if (name == "square_entry") ev.kind = EventKind::SquareEntry;
  else throw ConfigError("unknown event '" + name + "'");
  ev.galois_budget = get_or<int64_t>(cfg, "galois_budget", 200);
  return ev;
}

WalkConfig parse_walk(const Json& cfg, std::optional<uint64_t> seed_override) {
  RingA ring{get_or<std::vector<int64_t>>(cfg, "inverted_primes", {})};
  std::string group = require<std::string>(cfg, "group");
  int n = require<int>(cfg, "n");
  WalkConfig wc;
  if (group == "sl") {
    if (n < 2) throw ConfigError("sl needs n >= 2");
    wc.generators = sl_default_generators(n, ring);
    wc.alpha = coset_rep_sl(n, parse_rational(get_or<std::string>(cfg, "alpha_det", "1")), ring);
  } else if (group == "omega") {
    if (n < 2) throw ConfigError("omega needs hyperbolic rank >= 2");
    wc.generators = omega_default_generators(n, ring);
    wc.alpha = coset_rep_omega(n, get_or<bool>(cfg, "alpha_spinor_nontrivial", false), ring);
  } else {
    throw ConfigError("group must be 'sl' or 'omega'");
  }
  wc.trials = require<int>(cfg, "trials");
  wc.k_max = require<int>(cfg, "k_max");
  wc.seed = seed_override.value_or(get_or<uint64_t>(cfg, "seed", 0));
  if (wc.trials < 1 || wc.k_max < 0) throw ConfigError("trials >= 1 and k_max >= 0 required");
  return wc;
}

int cmd_walk_experiment(const std::string& config_path, const std::string& out_dir,
                        std::optional<uint64_t> seed, int threads) {
  Json cfg = load_config(config_path);
  reject_unknown(cfg, {"group", "n", "inverted_primes", "alpha_det",
                       "alpha_spinor_nontrivial", "trials", "k_max",
                       "checkpoints", "event", "galois_budget", "seed"},
                 "walk-experiment config");
  WalkConfig wc = parse_walk(cfg, seed);
  EventSpec ev = parse_event(cfg);
  std::vector<int> checkpoints =
      get_or<std::vector<int>>(cfg, "checkpoints", geometric_checkpoints(wc.k_max));

  ExperimentReport report = estimate_event_probability(wc, ev, checkpoints, threads);

  std::filesystem::create_directories(out_dir);
  write_file(std::filesystem::path(out_dir) / "report.csv",
             experiment_csv(report).str());
  write_file(std::filesystem::path(out_dir) / "report.json",
             experiment_json(report).dump(2) + "\n");
  std::cout << "wrote report.{csv,json} (" << report.stats.size()
            << " checkpoints)\n";
  return 0;
}

// ---------------------------------------------------------------------------
// density-verify

SplitClass parse_model(const std::string& s) {
  if (s == "split") return SplitClass::Split;
  if (s == "nonsplit") return SplitClass::NonSplit;
  throw ConfigError("model must be 'split' or 'nonsplit'");
}

QuadSpace make_space(int N, int64_t ell, SplitClass model) {
  Field F(ell);
  return model == SplitClass::Split ? QuadSpace::hyperbolic(F, N / 2)
                                    : QuadSpace::nonsplit(F, N / 2);
}

void run_poly_families(int N, int64_t ell, const EnumBudget& budget,
                       std::vector<DensityRecord>& out) {
  for (int eps : {0, 1}) {
    PolyFamilySpec spec;
    spec.kind = PolyFamilySpec::Kind::K;
    spec.eps = eps;
    out.push_back(count_poly_family(N, ell, spec, budget));
  }
  for (auto kind : {PolyFamilySpec::Kind::Equidist, PolyFamilySpec::Kind::Theta3,
                    PolyFamilySpec::Kind::Theta4})
    for (SquareClass e1 : {SquareClass::Square, SquareClass::NonSquare})
      for (SquareClass e2 : {SquareClass::Square, SquareClass::NonSquare}) {
        PolyFamilySpec spec;
        spec.kind = kind;
        spec.eps1 = e1;
        spec.eps2 = e2;
        out.push_back(count_poly_family(N, ell, spec, budget));
      }
}

int cmd_density_verify(const std::string& config_path, const std::string& out_dir,
                       std::optional<int64_t> budget_override, int threads) {
  Json cfg = load_config(config_path);
  reject_unknown(cfg, {"checks", "budget"}, "density-verify config");
  EnumBudget budget;
  if (cfg.contains("budget")) {
    reject_unknown(cfg.at("budget"), {"max_matrix_group_size", "max_poly_space"},
                   "budget");
    budget.max_matrix_group_size =
        get_or<int64_t>(cfg.at("budget"), "max_matrix_group_size",
                        budget.max_matrix_group_size);
    budget.max_poly_space = get_or<int64_t>(cfg.at("budget"), "max_poly_space",
                                            budget.max_poly_space);
  }
  if (budget_override) budget.max_matrix_group_size = *budget_override;

  std::vector<DensityRecord> records;
  bool budget_hit = false;
  for (const Json& check : require<Json>(cfg, "checks")) {
    std::string what = require<std::string>(check, "check");
    if (what == "poly_families") {
      reject_unknown(check, {"check", "N", "ell"}, what);
      run_poly_families(require<int>(check, "N"), require<int64_t>(check, "ell"),
                        budget, records);
    } else if (what == "group_order" || what == "exist_ss" || what == "ratios") {
      reject_unknown(check, {"check", "N", "ell", "model", "disc_sign"}, what);
      int N = require<int>(check, "N");
      int64_t ell = require<int64_t>(check, "ell");
      SplitClass model = parse_model(require<std::string>(check, "model"));
      if (order_orthogonal(N, ell, model) > budget.max_matrix_group_size) {
        DensityRecord rec;
        rec.lemma = what;
        rec.N = N;
        rec.ell = ell;
        rec.model = require<std::string>(check, "model");
        rec.in_regime = false;
        rec.pass = false;
        rec.note = "budget exceeded";
        records.push_back(std::move(rec));
        budget_hit = true;
        continue;
      }
      QuadSpace V = make_space(N, ell, model);
      if (what == "group_order") {
        records.push_back(verify_group_order(V, budget, threads));
      } else {
        auto census = charpoly_census(V, budget, threads);
        if (!census) throw ConfigError("census unexpectedly over budget");
        if (what == "exist_ss") {
          int sign = get_or<int>(check, "disc_sign", 1);
          auto recs = verify_exist_ss(V, *census, sign);
          records.insert(records.end(), recs.begin(), recs.end());
        } else {
          auto recs = verify_ratio_lemmas(V, *census, budget);
          records.insert(records.end(), recs.begin(), recs.end());
        }
      }
    } else if (what == "calibration") {
      reject_unknown(check, {"check", "points"}, what);
      std::vector<std::tuple<int, int64_t, SplitClass>> points;
      for (const Json& p : require<Json>(check, "points")) {
        reject_unknown(p, {"N", "ell", "model"}, "calibration point");
        points.emplace_back(require<int>(p, "N"), require<int64_t>(p, "ell"),
                            parse_model(require<std::string>(p, "model")));
      }
      CalibrationResult cal = calibrate_disc_convention(points, budget, threads);
      for (auto& rec : cal.records) records.push_back(std::move(rec));
      DensityRecord summary;
      summary.lemma = "disc_calibration";
      summary.label = "summary";
      summary.lhs = cal.chosen_sign;
      summary.rhs = {1, 0, 1};
      summary.pass = cal.unique && cal.chosen_sign == 1;
      summary.note = cal.unique ? "unique sign selected" : "calibration not unique";
      records.push_back(std::move(summary));
    } else if (what == "sl_types") {
      reject_unknown(check, {"check", "ell"}, what);
      Field F(require<int64_t>(check, "ell"));
      auto recs = verify_sl_types(F);
      records.insert(records.end(), recs.begin(), recs.end());
    } else if (what == "involution") {
      reject_unknown(check, {"check", "ell"}, what);
      auto recs = verify_involution_and_charsum(require<int64_t>(check, "ell"), budget);
      records.insert(records.end(), recs.begin(), recs.end());
    } else {
      throw ConfigError("unknown check '" + what + "'");
    }
  }

  std::filesystem::create_directories(out_dir);
  write_file(std::filesystem::path(out_dir) / "density.csv",
             density_csv(records).str());
  write_file(std::filesystem::path(out_dir) / "density.json",
             density_json(records).dump(2) + "\n");

  int failures = 0;
  for (const auto& r : records)
    if (r.in_regime && !r.pass) ++failures;
  std::cout << records.size() << " records, " << failures << " in-regime failures"
            << (budget_hit ? ", budget rows flagged" : "") << "\n";
  if (budget_hit) return kExitBudget;
  return failures ? 1 : 0;
}

// ---------------------------------------------------------------------------
// galois-certify

int cmd_galois_certify(const std::string& poly_text, const std::string& kind_name,
                       int64_t budget, const std::string& out_dir) {
  PolyQ f = parse_poly(poly_text);
  GaloisKind kind;
  if (kind_name == "sn") kind = GaloisKind::Sn;
  else if (kind_name == "wn") kind = GaloisKind::WN;
  else throw ConfigError("kind must be 'sn' or 'wn'");

  GaloisVerdict v = certify_max_galois(f, kind, budget);

  Json j;
  j["poly"] = poly_text;
  j["kind"] = kind_name;
  j["budget"] = budget;
  j["certified"] = v.certified;
  j["criteria"] = Json::array();
  for (const auto& c : v.criteria) {
    Json e;
    e["name"] = c.name;
    e["witness"] = c.witness;
    e["detail"] = c.detail;
    j["criteria"].push_back(std::move(e));
  }
  std::filesystem::create_directories(out_dir);
  write_file(std::filesystem::path(out_dir) / "witness.json", j.dump(2) + "\n");

  if (v.certified) {
    std::cout << "Certified: maximal Galois group (" << kind_name << ")\n";
    for (const auto& c : v.criteria)
      std::cout << "  " << c.name << ": prime " << c.witness << " (" << c.detail
                << ")\n";
  } else {
    std::cout << "Inconclusive at prime budget " << budget << "\n";
    for (const auto& c : v.criteria)
      if (c.witness == 0) std::cout << "  missing: " << c.name << "\n";
      else
        std::cout << "  found:   " << c.name << " at prime " << c.witness << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// sieve-bounds

int cmd_sieve_bounds(const std::string& config_path) {
  Json cfg = load_config(config_path);
  reject_unknown(cfg,
                 {"eta", "d", "variant", "L", "k_values", "H", "h_from_sl2"},
                 "sieve-bounds config");
  SieveBoundInputs in;
  in.eta = require<double>(cfg, "eta");
  in.d = require<int>(cfg, "d");
  in.L = get_or<double>(cfg, "L", 0.0);
  std::string variant = get_or<std::string>(cfg, "variant", "conjugacy");
  if (variant == "conjugacy") in.variant = SieveVariant::Conjugacy;
  else if (variant == "non_conjugacy") in.variant = SieveVariant::NonConjugacy;
  else throw ConfigError("variant must be 'conjugacy' or 'non_conjugacy'");
  std::vector<int64_t> ks = require<std::vector<int64_t>>(cfg, "k_values");

  mpq_class H;
  if (cfg.contains("h_from_sl2")) {
    const Json& hs = cfg.at("h_from_sl2");
    reject_unknown(hs, {"ells", "factor_type"}, "h_from_sl2");
    std::vector<int64_t> ells = require<std::vector<int64_t>>(hs, "ells");
    std::vector<int> parts = require<std::vector<int>>(hs, "factor_type");
    FactorizationType want;
    want.squarefree = true;
    for (int p : parts) want.degree_multiset[p] += 1;
    std::vector<PrimeTheta> per_prime;
    std::cout << "per-prime densities (SL(2), factor type";
    for (int p : parts) std::cout << " " << p;
    std::cout << "):\n";
    for (int64_t ell : ells) {
      Field F(ell);
      int64_t theta = 0;
      enumerate_sl2(F, [&](const MatF& g) {
        Poly f = charpoly(F, g);
        if (poly_has_sl_type(F, f, want)) ++theta;
      });
      PrimeTheta pt;
      pt.ell = ell;
      pt.theta = theta;
      pt.order = mpq_class(order_sl(2, ell));
      per_prime.push_back(pt);
      std::cout << "  l=" << ell << "  theta=" << theta << "  |G|=" << pt.order
                << "  density=" << format_sig(mpq_class(pt.theta / pt.order).get_d(), 6)
                << "\n";
    }
    HResult hr = saving_factor_H(per_prime);
    if (hr.degenerate) throw ConfigError("degenerate H (theta equals group order)");
    H = hr.value;
  } else {
    H = parse_rational(require<std::string>(cfg, "H"));
  }
  if (H <= 0) throw ConfigError("H must be positive");
  std::cout << "H = " << H.get_str() << " ~ " << format_sig(H.get_d(), 6) << "\n";
  std::cout << "k,H,L,delta,bound,beta\n";
  for (int64_t k : ks) {
    SieveBoundInputs inputs = in;
    inputs.k = k;
    SieveBound b = sieve_probability_bound(inputs, H);
    SieveBoundInputs di = inputs;
    di.L = b.L_used;
    std::cout << k << "," << format_sig(H.get_d(), 6) << ","
              << format_sig(b.L_used, 6) << "," << format_sig(delta_bound(di), 6)
              << "," << format_sig(b.bound, 6) << "," << format_sig(b.beta, 6)
              << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coset large-sieve laboratory"};
  app.require_subcommand(1);

  std::string config_path, out_dir = "out";
  std::optional<uint64_t> seed;
  std::optional<int64_t> budget_override;
  int threads = default_threads();

  std::string poly_text, kind_name = "sn";
  int64_t galois_budget = 200;

  auto add_common = [&](CLI::App* sub, bool needs_config) {
    auto* opt = sub->add_option("--config", config_path, "JSON config file");
    if (needs_config) opt->required();
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--threads", threads, "worker threads (0 = all)");
  };

  auto* walk = app.add_subcommand("walk-experiment",
                                  "random-walk event-frequency experiment");
  add_common(walk, true);
  walk->add_option("--seed", seed, "override the config seed");

  auto* density = app.add_subcommand("density-verify",
                                     "exhaustive verification of counting lemmas");
  add_common(density, true);
  density->add_option("--budget", budget_override,
                      "override max enumerated group size");

  auto* galois = app.add_subcommand("galois-certify",
                                    "certify a maximal Galois group over Q");
  galois->add_option("--poly", poly_text, "polynomial, e.g. 'T^2-T-1'")->required();
  galois->add_option("--kind", kind_name, "sn | wn");
  galois->add_option("--budget", galois_budget, "prime budget");
  galois->add_option("--out", out_dir, "output directory");

  auto* bounds = app.add_subcommand("sieve-bounds", "tabulate sieve bounds");
  add_common(bounds, true);

  CLI11_PARSE(app, argc, argv);

  try {
    if (walk->parsed())
      return cmd_walk_experiment(config_path, out_dir, seed, threads);
    if (density->parsed())
      return cmd_density_verify(config_path, out_dir, budget_override, threads);
    if (galois->parsed())
      return cmd_galois_certify(poly_text, kind_name, galois_budget, out_dir);
    if (bounds->parsed()) return cmd_sieve_bounds(config_path);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
