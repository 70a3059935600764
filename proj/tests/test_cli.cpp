#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace {

std::string cli_path() {
  const char* p = std::getenv("COSIEVE_CLI");
  REQUIRE_MESSAGE(p != nullptr, "COSIEVE_CLI must point at the built binary");
  return p;
}

int run(const std::string& args) {
  std::string cmd = cli_path() + " " + args + " >/dev/null 2>&1";
  int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  return WEXITSTATUS(status);
}

fs::path scratch() {
  fs::path dir = fs::temp_directory_path() / "cosieve-cli-test";
  fs::create_directories(dir);
  return dir;
}

void put(const fs::path& p, const std::string& text) {
  std::ofstream(p, std::ios::trunc) << text;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), "missing " << p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* kWalkConfig = R"({
  "group": "sl",
  "n": 2,
  "trials": 30,
  "k_max": 6,
  "event": "reducible",
  "seed": 5
})";

}  // namespace

TEST_CASE("invalid configs exit 2 with no crash") {
  fs::path dir = scratch();
  put(dir / "bad1.json", "{ not json");
  CHECK(run("walk-experiment --config " + (dir / "bad1.json").string()) == 2);
  put(dir / "bad2.json", R"({"group":"sl","n":2,"trials":1,"k_max":0,"event":"reducible","typo_key":1})");
  CHECK(run("walk-experiment --config " + (dir / "bad2.json").string()) == 2);
  put(dir / "bad3.json", R"({"group":"su","n":2,"trials":1,"k_max":0,"event":"reducible"})");
  CHECK(run("walk-experiment --config " + (dir / "bad3.json").string()) == 2);
  CHECK(run("walk-experiment --config " + (dir / "nonexistent.json").string()) == 2);
}

TEST_CASE("walk experiment writes deterministic reports") {
  fs::path dir = scratch();
  put(dir / "walk.json", kWalkConfig);
  fs::path out1 = dir / "o1", out2 = dir / "o2";
  CHECK(run("walk-experiment --config " + (dir / "walk.json").string() +
            " --out " + out1.string()) == 0);
  CHECK(run("walk-experiment --config " + (dir / "walk.json").string() +
            " --out " + out2.string() + " --threads 1") == 0);
  CHECK(slurp(out1 / "report.csv") == slurp(out2 / "report.csv"));
  CHECK(slurp(out1 / "report.json") == slurp(out2 / "report.json"));
  std::string csv = slurp(out1 / "report.csv");
  CHECK(csv.substr(0, 2) == "k,");              // header row
  CHECK(csv.find("\r") == std::string::npos);   // LF only
  // a different seed changes the bytes
  fs::path out3 = dir / "o3";
  CHECK(run("walk-experiment --config " + (dir / "walk.json").string() +
            " --out " + out3.string() + " --seed 99") == 0);
  CHECK(slurp(out1 / "report.csv") != slurp(out3 / "report.csv"));
}

TEST_CASE("density verify: pass, fail exit codes and budget refusal") {
  fs::path dir = scratch();
  put(dir / "dens.json", R"({"checks":[
    {"check":"poly_families","N":2,"ell":5},
    {"check":"group_order","N":2,"ell":3,"model":"split"}
  ]})");
  CHECK(run("density-verify --config " + (dir / "dens.json").string() +
            " --out " + (dir / "d1").string()) == 0);
  std::string csv = slurp(dir / "d1" / "density.csv");
  CHECK(csv.find("group_order") != std::string::npos);

  // N=6 enumeration is beyond any reasonable budget: flagged rows, exit 3
  put(dir / "big.json", R"({"checks":[
    {"check":"group_order","N":6,"ell":5,"model":"split"}
  ]})");
  CHECK(run("density-verify --config " + (dir / "big.json").string() +
            " --out " + (dir / "d2").string()) == 3);
  CHECK(slurp(dir / "d2" / "density.csv").find("budget exceeded") != std::string::npos);

  // a tiny override also trips the refusal on an otherwise-fine check
  put(dir / "mid.json", R"({"checks":[
    {"check":"group_order","N":4,"ell":3,"model":"split"}
  ]})");
  CHECK(run("density-verify --config " + (dir / "mid.json").string() +
            " --out " + (dir / "d3").string()) == 0);
  CHECK(run("density-verify --config " + (dir / "mid.json").string() +
            " --out " + (dir / "d4").string() + " --budget 10") == 3);
}

TEST_CASE("galois certify subcommand") {
  fs::path dir = scratch();
  CHECK(run("galois-certify --poly T^2-T-1 --kind sn --out " +
            (dir / "g1").string()) == 0);
  std::string witness = slurp(dir / "g1" / "witness.json");
  CHECK(witness.find("\"certified\": true") != std::string::npos);
  CHECK(run("galois-certify --poly 2-3T+T^2 --kind sn --out " +
            (dir / "g2").string()) == 0);
  CHECK(slurp(dir / "g2" / "witness.json").find("\"certified\": false") !=
        std::string::npos);
  // malformed polynomial
  CHECK(run("galois-certify --poly 'T^^2' --out " + (dir / "g3").string()) == 2);
}

TEST_CASE("sieve bounds subcommand") {
  fs::path dir = scratch();
  put(dir / "sb.json", R"({"eta":0.1,"d":8,"k_values":[10,50,100],"H":"1/2"})");
  CHECK(run("sieve-bounds --config " + (dir / "sb.json").string()) == 0);
  put(dir / "sb2.json", R"({"eta":0.1,"d":8,"k_values":[10],"H":"1/2","bogus":1})");
  CHECK(run("sieve-bounds --config " + (dir / "sb2.json").string()) == 2);
  put(dir / "sb3.json",
      R"({"eta":0.05,"d":3,"k_values":[20,40],"h_from_sl2":{"ells":[5,7],"factor_type":[1,1]}})");
  CHECK(run("sieve-bounds --config " + (dir / "sb3.json").string()) == 0);
}
