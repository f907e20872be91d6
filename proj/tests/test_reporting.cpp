#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "wintgen/reporting.hpp"

using namespace wintgen;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("wintgen_kit_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunConfig catalog_run(const std::string& cmd, const std::string& name, std::vector<int> grid) {
  RunConfig c;
  c.command = cmd;
  c.catalog = name;
  c.grid = std::move(grid);
  c.threads = 2;
  return c;
}

}  // namespace

TEST_CASE("check on the equality and non-equality examples") {
  const RunResult v = run_command(catalog_run("check", "veronese_s4", {3, 3}));
  CHECK(v.exit_code == kExitOk);
  CHECK(v.report["schema"] == "wintgen-kit/1");
  CHECK(v.report["summary"]["wintgen_fraction"].get<double>() == 1.0);
  CHECK(v.report["points"].size() == 9);

  const RunResult c = run_command(catalog_run("check", "clifford_torus_s3_in_s4", {3, 3}));
  CHECK(c.exit_code == kExitOk);
  CHECK(c.report["summary"]["wintgen_fraction"].get<double>() == 0.0);
  CHECK(std::abs(c.report["summary"]["min_deficit"].get<double>() - 1.0) <= 1e-6);
}

TEST_CASE("bad input exits with 2") {
  const fs::path dir = scratch("bad");
  std::ofstream(dir / "bad.json") << R"({"dim_m": 2, "codim_p": 1, "domain": [[0, 1], [0, 1]],
    "components": ["u1", "u2", "1"]})";
  RunConfig c;
  c.command = "check";
  c.chart_path = (dir / "bad.json").string();
  const RunResult r = run_command(c);
  CHECK(r.exit_code == kExitBadInput);
  CHECK_FALSE(r.diagnostic.empty());

  c.chart_path = (dir / "missing.json").string();
  CHECK(run_command(c).exit_code == kExitBadInput);
  CHECK(run_command(catalog_run("check", "veronese_s4", {1, 3})).exit_code == kExitBadInput);
  CHECK(run_command(catalog_run("check", "veronese_s4", {3, 3, 3})).exit_code == kExitBadInput);
  CHECK(run_command(catalog_run("check", "nothing_here", {})).exit_code == kExitBadInput);
}

TEST_CASE("invariants") {
  const RunResult r = run_command(catalog_run("invariants", "veronese_s4", {2, 2}));
  CHECK(r.exit_code == kExitOk);
  const auto& p = r.report["points"][0];
  CHECK(p["moebius"]["identities"]["B_norm_defect"].get<double>() <= 1e-7);
  CHECK(p["wintgen"].get<bool>());
  CHECK(p.contains("wintgen_invariants"));
  CHECK(p["moebius_invariance"]["classification_kept"].get<bool>());
  CHECK(run_command(catalog_run("invariants", "totally_geodesic_s2_s4", {2, 2})).exit_code == kExitUmbilic);
}

TEST_CASE("gaussmap on the Veronese surface") {
  const RunResult r = run_command(catalog_run("gaussmap", "veronese_s4", {2, 2}));
  CHECK(r.exit_code == kExitOk);
  CHECK(r.report["summary"]["certified_count"].get<int>() == 4);
}

TEST_CASE("construct from the helicoid seed") {
  const fs::path dir = scratch("construct");
  RunConfig c = catalog_run("construct", "helicoid_seed_m3", {4, 3, 3});
  c.out_dir = dir;
  const RunResult r = run_command(c);
  CHECK(r.exit_code == kExitOk);
  CHECK(r.report["summary"]["min_deficit"].get<double>() >= -1e-6);
  CHECK(r.report["mesh"]["slice_vertices"].get<int>() == 12);
  CHECK(fs::exists(dir / "report.json"));
  const std::string obj = slurp(dir / "slice.obj");
  CHECK(obj.find("\nf 1 ") != std::string::npos);
  std::istringstream lines(obj);
  int lo = 1000, hi = 0, faces = 0;
  for (std::string line; std::getline(lines, line);) {
    if (line.rfind("f ", 0) != 0) continue;
    ++faces;
    std::istringstream f(line.substr(2));
    for (int k; f >> k;) {
      lo = std::min(lo, k);
      hi = std::max(hi, k);
    }
  }
  CHECK(faces == 2 * 3 * 2);
  CHECK(lo == 1);
  CHECK(hi == 12);
  CHECK(slurp(dir / "slice.ply").find("element vertex 12") != std::string::npos);

  SUBCASE("a constant seed is degenerate") {
    std::ofstream(dir / "const.json") << R"({"m": 3, "components": ["i", "0", "0", "0", "0"]})";
    RunConfig s;
    s.command = "construct";
    s.seed_path = (dir / "const.json").string();
    const RunResult bad = run_command(s);
    CHECK(bad.exit_code == kExitDegenerateSeed);
    CHECK(bad.report.contains("failed_invariant"));
  }
  SUBCASE("a seed that is not a null curve is degenerate") {
    std::ofstream(dir / "notnull.json") << R"({"m": 3, "components": ["z", "0", "0", "0", "0"]})";
    RunConfig s;
    s.command = "construct";
    s.seed_path = (dir / "notnull.json").string();
    CHECK(run_command(s).exit_code == kExitDegenerateSeed);
  }
}

TEST_CASE("reports do not depend on the worker count") {
  const fs::path a = scratch("det_a"), b = scratch("det_b");
  RunConfig c = catalog_run("invariants", "hopf_veronese_s5", {2, 2, 2});
  c.threads = 1;
  c.out_dir = a;
  run_command(c);
  c.threads = 3;
  c.out_dir = b;
  run_command(c);
  CHECK(slurp(a / "report.json") == slurp(b / "report.json"));
  CHECK(slurp(a / "report.json").size() > 100);
}
