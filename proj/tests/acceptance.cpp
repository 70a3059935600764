// Acceptance suite: twelve end-to-end checks, one pass/fail line each.
// Everything that can be decided exactly is decided exactly; the two walk
// experiments are qualitative (threshold + significance), as stated in the
// criterion itself.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cosieve/density.hpp"
#include "cosieve/galois.hpp"
#include "cosieve/report.hpp"

using namespace cosieve;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int idx, bool pass, const std::string& what, const std::string& note = "") {
  std::printf("criterion %2d: %s - %s%s%s\n", idx, pass ? "PASS" : "FAIL",
              what.c_str(), note.empty() ? "" : " ", note.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

QuadSpace space(int N, int64_t l, SplitClass m) {
  Field F(l);
  return m == SplitClass::Split ? QuadSpace::hyperbolic(F, N / 2)
                                : QuadSpace::nonsplit(F, N / 2);
}

// --- 1: transform-based irreducibility prediction ---------------------------
void criterion1() {
  int64_t checked = 0, bad = 0;
  for (int64_t l : {3, 5, 7})
    for (int N : {2, 4, 6, 8}) {
      Field F(l);
      for_each_self_reciprocal(F, N, 1, [&](const Poly& f) {
        auto pred = meyn_predict_irreducible(F, f);
        if (!pred) return;
        ++checked;
        if (*pred != is_irreducible(F, f)) ++bad;
      });
    }
  report(1, bad == 0 && checked > 0, "transform irreducibility criterion",
         std::to_string(checked) + " predictions, " + std::to_string(bad) +
             " mismatches");
}

// --- 2: discriminant vs f(1)f(-1) square classes ----------------------------
void criterion2() {
  int64_t checked = 0, bad = 0;
  for (int64_t l : {3, 5, 7})
    for (int N : {2, 4, 6, 8}) {
      Field F(l);
      for_each_self_reciprocal(F, N, 1, [&](const Poly& f) {
        if (!factorization_type(F, f).squarefree) return;
        ++checked;
        SquareClass lhs = disc_class_orth(F, f);
        SquareClass rhs =
            F.legendre(F.mul(poly_eval(F, f, 1), poly_eval(F, f, F.reduce(-1))));
        if (lhs != rhs) ++bad;
      });
    }
  report(2, bad == 0 && checked > 0, "disc(f) = f(1)f(-1) mod squares",
         std::to_string(checked) + " polynomials");
}

// --- 3: determinant fast path for the spinor norm ---------------------------
void criterion3() {
  int64_t checked = 0, bad = 0;
  EnumBudget budget;
  auto run = [&](const QuadSpace& V) {
    enumerate_orthogonal(V, budget, [&](const MatF& g) {
      auto z = zassenhaus_spinor(V, g);
      if (!z) return;
      ++checked;
      if (*z != spinor_norm(V, g)) ++bad;
    });
  };
  for (int64_t l : {3, 5, 7, 11, 13})
    for (auto m : {SplitClass::Split, SplitClass::NonSplit}) run(space(2, l, m));
  for (int64_t l : {3, 5})
    for (auto m : {SplitClass::Split, SplitClass::NonSplit}) run(space(4, l, m));
  report(3, bad == 0 && checked > 0, "spinor norm fast path vs reflections",
         std::to_string(checked) + " elements");
}

// --- 4: irreducible self-reciprocal counts ----------------------------------
void criterion4() {
  int points = 0, bad = 0;
  EnumBudget budget;
  for (int N : {4, 6, 8})
    for (int64_t l : {3, 5, 7, 11, 13})
      for (int eps : {0, 1}) {
        PolyFamilySpec spec;
        spec.kind = PolyFamilySpec::Kind::K;
        spec.eps = eps;
        DensityRecord rec = count_poly_family(N, l, spec, budget);
        ++points;
        if (!rec.pass) ++bad;
      }
  report(4, bad == 0, "irreducible-count brackets",
         std::to_string(points) + " (N,l,eps) points");
}

// --- 5: equidistribution and the prime-part / one-quadratic families --------
void criterion5() {
  int in_regime = 0, bad = 0, skipped = 0;
  EnumBudget budget;
  for (auto kind : {PolyFamilySpec::Kind::Equidist, PolyFamilySpec::Kind::Theta3,
                    PolyFamilySpec::Kind::Theta4})
    for (int N : {4, 6, 8})
      for (int64_t l : {3, 5, 7, 11, 13})
        for (auto e1 : {SquareClass::Square, SquareClass::NonSquare})
          for (auto e2 : {SquareClass::Square, SquareClass::NonSquare}) {
            PolyFamilySpec spec;
            spec.kind = kind;
            spec.eps1 = e1;
            spec.eps2 = e2;
            DensityRecord rec = count_poly_family(N, l, spec, budget);
            if (!rec.in_regime) {
              ++skipped;
              continue;
            }
            ++in_regime;
            if (!rec.pass) ++bad;
          }
  report(5, bad == 0 && in_regime > 0, "polynomial family lower bounds",
         std::to_string(in_regime) + " in-regime points, " +
             std::to_string(skipped) + " flagged out of regime");
}

// --- 6: semisimple realization and the disc-convention calibration ----------
void criterion6() {
  EnumBudget budget;
  std::vector<std::tuple<int, int64_t, SplitClass>> points;
  for (auto m : {SplitClass::Split, SplitClass::NonSplit}) {
    for (int64_t l : {3, 5, 7}) points.emplace_back(2, l, m);
    for (int64_t l : {3, 5}) points.emplace_back(4, l, m);
  }
  CalibrationResult cal = calibrate_disc_convention(points, budget, 0);
  int64_t realized_misses = 0;
  for (const auto& rec : cal.records)
    if (rec.label == "sign=+1" && !rec.pass) ++realized_misses;
  bool ok = cal.unique && cal.chosen_sign == 1 && realized_misses == 0;
  report(6, ok, "semisimple charpoly realization",
         std::string("convention ") + (cal.unique ? "unique" : "ambiguous") +
             ", sign " + std::to_string(cal.chosen_sign));
}

// --- 7: family ratios against the explicit displays -------------------------
void criterion7() {
  EnumBudget budget;
  int in_regime = 0, bad = 0;
  std::vector<std::string> bad_labels;
  for (int64_t l : {3, 5, 11, 13})
    for (auto m : {SplitClass::Split, SplitClass::NonSplit}) {
      QuadSpace V = space(4, l, m);
      auto census = charpoly_census(V, budget, 0);
      if (!census) {
        bad_labels.push_back("budget@" + std::to_string(l));
        ++bad;
        continue;
      }
      bool explicit_rhs_regime = l >= 11;  // small l: only the exact chain value
      for (const auto& rec : verify_ratio_lemmas(V, *census, budget)) {
        if (!rec.in_regime) continue;
        if (rec.lemma != "lem7.2ko1_chain" && !explicit_rhs_regime) continue;
        ++in_regime;
        if (!rec.pass) {
          ++bad;
          bad_labels.push_back(rec.lemma + ":" + rec.model + ":" + rec.label +
                               "@l=" + std::to_string(l));
        }
      }
    }
  std::string note = std::to_string(in_regime) + " in-regime ratio checks";
  for (const auto& s : bad_labels) note += " [" + s + "]";
  report(7, bad == 0 && in_regime > 0, "sieving-set density ratios", note);
}

// --- 8: involution doubling and the character sum ---------------------------
void criterion8() {
  EnumBudget budget;
  int bad = 0, checked = 0;
  for (int64_t l : {5, 13})
    for (const auto& rec : verify_involution_and_charsum(l, budget))
      if (rec.lemma == "involution") {
        if (!rec.in_regime || !rec.pass) ++bad;
        ++checked;
      }
  for (int64_t l : {3, 5, 7, 11, 13})
    for (const auto& rec : verify_involution_and_charsum(l, budget))
      if (rec.lemma == "charsum") {
        if (!rec.pass) ++bad;
        ++checked;
      }
  report(8, bad == 0 && checked > 0, "spinor involution and character sum",
         std::to_string(checked) + " checks");
}

// --- 9: generator closures fill the finite groups ---------------------------
mpz_class closure_size(const GeneratorSet& gens, const Field& F) {
  std::vector<MatF> basis;
  for (const auto& g : gens.elements) basis.push_back(reduce_mod(g, F));
  std::set<std::vector<fp>> seen;
  std::vector<MatF> frontier{MatF::identity(basis.front().n)};
  seen.insert(frontier.front().a);
  while (!frontier.empty()) {
    std::vector<MatF> next;
    for (const auto& g : frontier)
      for (const auto& s : basis) {
        MatF h = mat_mul(F, g, s);
        if (seen.insert(h.a).second) next.push_back(h);
      }
    frontier = std::move(next);
  }
  return mpz_class(static_cast<long>(seen.size()));
}

void criterion9() {
  RingA ring{{}};
  bool ok = true;
  std::string note;
  auto check = [&](const std::string& name, const GeneratorSet& gens, int64_t l,
                   const mpz_class& expect) {
    mpz_class got = closure_size(gens, Field(l));
    if (got != expect) {
      ok = false;
      note += " " + name + "/" + std::to_string(l) + "=" + got.get_str() +
              "!=" + expect.get_str();
    }
  };
  for (int64_t l : {3, 5, 7})
    check("sl2", sl_default_generators(2, ring), l, order_sl(2, l));
  check("sl3", sl_default_generators(3, ring), 3, order_sl(3, 3));
  for (int64_t l : {3, 5})
    check("omega4", omega_default_generators(2, ring), l,
          order_orthogonal(4, l, SplitClass::Split) / 4);
  report(9, ok, "mod-l generator closures",
         note.empty() ? "6 closure cardinalities exact" : note);
}

// --- 10: qualitative decay along the walks ----------------------------------
void criterion10() {
  RingA ring{{}};
  bool all_ok = true;
  std::string note;
  auto run = [&](const std::string& name, WalkConfig cfg, EventSpec ev) {
    auto checkpoints = geometric_checkpoints(cfg.k_max);
    ExperimentReport rep = estimate_event_probability(cfg, ev, checkpoints, 0);
    double final_freq = rep.stats.empty() ? 1.0 : rep.stats.back().freq;
    bool ok = final_freq < 0.05 && rep.fit.valid && rep.fit.slope_negative_95;
    all_ok = all_ok && ok;
    char buf[160];
    std::snprintf(buf, sizeof(buf), " %s: freq(k=%d)=%.4f slope=%.4f%s", name.c_str(),
                  cfg.k_max, final_freq, rep.fit.valid ? rep.fit.slope : 0.0,
                  ok ? "" : " (!)");
    note += buf;
  };
  {
    WalkConfig cfg;
    cfg.generators = sl_default_generators(3, ring);
    cfg.alpha = coset_rep_sl(3, 1, ring);
    cfg.trials = 2000;
    cfg.k_max = 60;
    cfg.seed = 2024;
    EventSpec ev;
    ev.kind = EventKind::NotMaxGalois;
    ev.galois_budget = 200;
    run("sl3-galois", cfg, ev);
  }
  {
    WalkConfig cfg;
    cfg.generators = omega_default_generators(3, ring);
    cfg.alpha = coset_rep_omega(3, false, ring);
    cfg.trials = 2000;
    cfg.k_max = 60;
    cfg.seed = 2024;
    EventSpec ev;
    ev.kind = EventKind::Reducible;
    run("so33-reducible", cfg, ev);
  }
  report(10, all_ok, "qualitative decay of non-generic frequencies", note);
}

// --- 11: bound arithmetic against frozen references -------------------------
void criterion11() {
  struct Ref {
    double eta;
    int d;
    double L;
    int64_t k;
    SieveVariant v;
    double expect;  // 1 + L^A exp(-eta k), computed at 30-digit precision
  };
  const std::vector<Ref> refs = {
      {0.1, 8, 10.0, 100, SieveVariant::Conjugacy, 453999298.62484826},
      {0.1, 8, 10.0, 100, SieveVariant::NonConjugacy, 4.5399929762484826e+30},
      {0.05, 3, 25.0, 400, SieveVariant::Conjugacy, 1.1006422667206326},
      {0.05, 3, 25.0, 400, SieveVariant::NonConjugacy, 34338829010.551898},
      {0.2, 15, 1000.0, 50, SieveVariant::Conjugacy, 1.4356718366111928e+66},
      {0.01, 8, 2.0, 10, SieveVariant::Conjugacy, 7413.4281285505808},
      {0.3, 24, 100.0, 200, SieveVariant::NonConjugacy, 8.7565107626965398e+179},
      {1.0, 3, 3.0, 7, SieveVariant::Conjugacy, 1.3838004924476254},
      {0.15, 35, 50.0, 1000, SieveVariant::Conjugacy, 5.6327820388989127e+25},
      {0.25, 48, 12.0, 300, SieveVariant::NonConjugacy, 4.5716112946919747e+188},
  };
  int bad = 0;
  for (const auto& r : refs) {
    SieveBoundInputs in;
    in.eta = r.eta;
    in.d = r.d;
    in.L = r.L;
    in.k = r.k;
    in.variant = r.v;
    double got = delta_bound(in);
    if (std::abs(got - r.expect) > 5e-12 * r.expect) ++bad;
    // the full bound is delta / H exactly
    SieveBound b = sieve_probability_bound(in, mpq_class(1, 2));
    if (std::abs(b.bound - 2.0 * got) > 5e-12 * b.bound) ++bad;
  }
  // the selected cutoff beats halved and doubled alternatives
  SieveBoundInputs in;
  in.eta = 0.1;
  in.d = 8;
  in.k = 1000;
  SieveBound opt = sieve_probability_bound(in, mpq_class(1));
  bool cutoff_ok = true;
  // H grows linearly with the cutoff, so the alternatives get a rescaled H
  for (double scale : {0.5, 2.0}) {
    SieveBoundInputs alt = in;
    alt.L = scale * opt.L_used;
    mpq_class H_alt = mpq_class(scale * 2) / 2;
    if (sieve_probability_bound(alt, H_alt).bound < opt.bound) cutoff_ok = false;
  }
  report(11, bad == 0 && cutoff_ok, "bound arithmetic vs frozen references",
         std::to_string(refs.size()) + " tuples, 12 significant digits" +
             (cutoff_ok ? "" : "; cutoff not optimal"));
}

// --- 12: byte determinism of every subcommand -------------------------------
std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void criterion12() {
  const char* cli = std::getenv("COSIEVE_CLI");
  if (!cli) {
    report(12, false, "subcommand determinism", "COSIEVE_CLI not set");
    return;
  }
  fs::path dir = fs::temp_directory_path() / "cosieve-acceptance";
  fs::create_directories(dir);
  auto put = [&](const std::string& name, const std::string& text) {
    std::ofstream(dir / name, std::ios::trunc) << text;
  };
  put("walk.json",
      R"({"group":"omega","n":2,"trials":25,"k_max":8,"event":"square_entry","seed":3})");
  put("dens.json",
      R"({"checks":[{"check":"poly_families","N":4,"ell":3},{"check":"ratios","N":4,"ell":3,"model":"split"}]})");
  put("sb.json", R"({"eta":0.1,"d":8,"k_values":[10,100],"H":"3/4"})");

  struct Cmd {
    std::string args;
    std::vector<std::string> outputs;  // relative to the per-run out dir
  };
  std::vector<Cmd> cmds = {
      {"walk-experiment --config " + (dir / "walk.json").string(),
       {"report.csv", "report.json"}},
      {"density-verify --config " + (dir / "dens.json").string(),
       {"density.csv", "density.json"}},
      {"galois-certify --poly T^4+3T^3+T^2+3T+1 --kind wn", {"witness.json"}},
      {"sieve-bounds --config " + (dir / "sb.json").string(), {}},
  };
  bool ok = true;
  std::string note;
  for (size_t c = 0; c < cmds.size(); ++c) {
    std::vector<std::string> bytes[2];
    for (int run = 0; run < 2; ++run) {
      fs::path out = dir / ("out" + std::to_string(c) + "_" + std::to_string(run));
      fs::path stdout_file = out.string() + ".stdout";
      std::string cmd = std::string(cli) + " " + cmds[c].args + " --out " +
                        out.string() + " > " + stdout_file.string() + " 2>/dev/null";
      if (std::system(cmd.c_str()) == -1) ok = false;
      bytes[run].push_back(slurp(stdout_file));
      for (const auto& rel : cmds[c].outputs) bytes[run].push_back(slurp(out / rel));
    }
    if (bytes[0] != bytes[1] || bytes[0].empty()) {
      ok = false;
      note += " mismatch in command " + std::to_string(c);
    }
  }
  report(12, ok, "subcommand determinism",
         ok ? "4 subcommands byte-identical across reruns" : note);
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  criterion11();
  criterion12();
  std::printf("%d of 12 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
