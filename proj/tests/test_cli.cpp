#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "lohe/generate.hpp"
#include "lohe/serialize.hpp"

namespace fs = std::filesystem;
using namespace lohe;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("lohe_cli_test_" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

int run_cli(const std::string& args) {
  const std::string cmd = std::string(LOHE_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write(const fs::path& p, const std::string& content) {
  std::ofstream out(p);
  out << content;
}

}  // namespace

TEST_CASE("missing and malformed configs exit with code 2") {
  CHECK(run_cli("--config /nonexistent/config.json") == 2);
  TempDir dir;
  write(dir.path / "bad.json", "{not json");
  CHECK(run_cli("--config " + (dir.path / "bad.json").string()) == 2);
  write(dir.path / "mode.json", R"({"mode": "unknown"})");
  CHECK(run_cli("--config " + (dir.path / "mode.json").string()) == 2);
}

TEST_CASE("simulate writes deterministic diagnostics") {
  TempDir dir;
  write(dir.path / "sim.json", R"({
    "mode": "simulate",
    "symbol": {"generate": {"size": [2], "N": 3, "seed": 7, "coupling": [0.8, 0.2], "freq_scale": 0.5}},
    "h": 1e-3, "t_end": 1.0, "sample_every": 100, "snapshots": 2,
    "assert": {"norm_drift_below": 1e-8}
  })");
  const std::string base = "--config " + (dir.path / "sim.json").string();
  CHECK(run_cli(base + " --out " + (dir.path / "a").string()) == 0);
  CHECK(run_cli(base + " --out " + (dir.path / "b").string()) == 0);
  const std::string csv_a = slurp(dir.path / "a" / "diagnostics.csv");
  CHECK(csv_a == slurp(dir.path / "b" / "diagnostics.csv"));
  CHECK(csv_a.rfind("t,", 0) == 0);
  CHECK(fs::exists(dir.path / "a" / "state_0000.csv"));
  CHECK(fs::exists(dir.path / "a" / "report.txt"));

  // byte-identical under a different worker cap
  setenv("LOHE_THREADS", "4", 1);
  CHECK(run_cli(base + " --out " + (dir.path / "c").string()) == 0);
  unsetenv("LOHE_THREADS");
  CHECK(csv_a == slurp(dir.path / "c" / "diagnostics.csv"));
}

TEST_CASE("fuse folds symbol files associatively") {
  TempDir dir;
  Rng rng(5);
  // dyadic grid keeps the fold-order comparison exact in floating point
  SymbolSpec spec;
  spec.size = SizeVector{};
  spec.ensemble = 3;
  spec.dyadic = true;
  const CharacteristicSymbol k1 = random_symbol(spec, rng);
  const CharacteristicSymbol k2 = random_symbol(spec, rng);
  SymbolSpec sphere_spec;
  sphere_spec.size = SizeVector{{2}};
  sphere_spec.ensemble = 3;
  sphere_spec.dyadic = true;
  const CharacteristicSymbol k3 = random_symbol(sphere_spec, rng);
  save_symbol(k1, (dir.path / "k1.json").string());
  save_symbol(k2, (dir.path / "k2.json").string());
  save_symbol(k3, (dir.path / "k3.json").string());
  save_symbol(identity_symbol(3), (dir.path / "e.json").string());

  write(dir.path / "fuse.json", R"({
    "mode": "fuse",
    "inputs": [")" + (dir.path / "k1.json").string() + R"(", ")" +
                               (dir.path / "k2.json").string() + R"(", ")" +
                               (dir.path / "k3.json").string() + R"("]
  })");
  CHECK(run_cli("--config " + (dir.path / "fuse.json").string() + " --out " + (dir.path / "out").string()) == 0);
  const CharacteristicSymbol fused = load_symbol((dir.path / "out" / "fused.json").string());
  CHECK(symbols_equal(fused, fuse_symbols(fuse_symbols(k1, k2), k3)));
  // associativity: the right fold gives the same symbol
  CHECK(symbols_equal(fused, fuse_symbols(k1, fuse_symbols(k2, k3))));

  // two Kuramoto-shaped files fuse to a rank-0 symbol with added strengths
  const CharacteristicSymbol pair = fuse_symbols(k1, k2);
  CHECK(pair.rank() == 0);
  CHECK(pair.coupling.values()[0] == k1.coupling.values()[0] + k2.coupling.values()[0]);

  // identity input leaves the other symbol unchanged
  write(dir.path / "fuse_id.json", R"({
    "mode": "fuse",
    "inputs": [")" + (dir.path / "e.json").string() + R"(", ")" +
                                  (dir.path / "k3.json").string() + R"("]
  })");
  CHECK(run_cli("--config " + (dir.path / "fuse_id.json").string() + " --out " + (dir.path / "out2").string()) == 0);
  CHECK(symbols_equal(load_symbol((dir.path / "out2" / "fused.json").string()), k3));

  // ensemble-size mismatch is a config error
  SymbolSpec other = spec;
  other.ensemble = 2;
  Rng rng2(9);
  save_symbol(random_symbol(other, rng2), (dir.path / "n2.json").string());
  write(dir.path / "fuse_bad.json", R"({
    "mode": "fuse",
    "inputs": [")" + (dir.path / "k1.json").string() + R"(", ")" +
                                   (dir.path / "n2.json").string() + R"("]
  })");
  CHECK(run_cli("--config " + (dir.path / "fuse_bad.json").string() + " --out " + (dir.path / "out3").string()) == 2);
}

TEST_CASE("check mode runs a named suite") {
  TempDir dir;
  write(dir.path / "check.json", R"({"mode": "check", "suite": "monoid", "seed": 3})");
  CHECK(run_cli("--config " + (dir.path / "check.json").string() + " --out " + (dir.path / "out").string()) == 0);
  const std::string report = slurp(dir.path / "out" / "report.txt");
  CHECK(report.find("PASS monoid associativity") != std::string::npos);
  CHECK(report.find("FAIL") == std::string::npos);
  CHECK(run_cli("--suite no-such-suite --out " + (dir.path / "out2").string()) == 2);
}

TEST_CASE("simulating the identity symbol gives constant diagnostics") {
  TempDir dir;
  write(dir.path / "id.json", R"({
    "mode": "simulate",
    "symbol": {
      "size": [],
      "coupling": [0.0],
      "frequencies": [[[[0.0, 0.0]]], [[[0.0, 0.0]]]],
      "initial": [[[1.0, 0.0]], [[1.0, 0.0]]]
    },
    "h": 1e-2, "t_end": 1.0, "sample_every": 10,
    "assert": {"norm_drift_below": 0.0, "final_diameter_below": 0.0}
  })");
  CHECK(run_cli("--config " + (dir.path / "id.json").string() + " --out " + (dir.path / "out").string()) == 0);
  const std::string csv = slurp(dir.path / "out" / "diagnostics.csv");
  CHECK(csv.find("\n1,0,1,") != std::string::npos);  // t=1: diameter 0, alignment 1
}

TEST_CASE("divergent simulation exits with code 1") {
  TempDir dir;
  // blow-up: a frequency entry violating skew-Hermiticity would be rejected,
  // so drive divergence with an enormous coupling strength and step
  write(dir.path / "diverge.json", R"({
    "mode": "simulate",
    "symbol": {"generate": {"size": [2], "N": 3, "seed": 1, "coupling": [1e14, 0], "freq_scale": 0.0}},
    "h": 1.0, "t_end": 50.0, "sample_every": 1
  })");
  CHECK(run_cli("--config " + (dir.path / "diverge.json").string() + " --out " + (dir.path / "out").string()) == 1);
}
