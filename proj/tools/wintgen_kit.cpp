#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "wintgen/reporting.hpp"

namespace {

std::vector<int> parse_grid(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Moebius geometry of Wintgen ideal submanifolds"};
  app.require_subcommand(1);
  wintgen::RunConfig cfg;
  std::string chart, catalog, seed, grid, out;

  for (const char* name : {"check", "invariants", "gaussmap", "construct"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->set_help_flag("--help", "print this help");
    auto* g = sub->add_option_group("input");
    g->add_option("--chart", chart, "chart JSON file");
    g->add_option("--catalog", catalog, "catalog entry name");
    g->add_option("--seed", seed, "Weierstrass seed JSON file");
    g->require_option(1);
    sub->add_option("--grid", grid, "per-axis grid counts, e.g. 6,6");
    sub->add_option("--h", cfg.h, "finite-difference step");
    sub->add_option("--tol", cfg.tol, "tolerance for the deficit and the Wintgen test");
    sub->add_option("--out", out, "output directory for report.json and meshes");
    sub->add_option("--rng-seed", cfg.rng_seed, "seed for randomized checks");
    sub->callback([&cfg, name] { cfg.command = name; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : wintgen::kExitBadInput;
  }
  if (!chart.empty()) cfg.chart_path = chart;
  if (!catalog.empty()) cfg.catalog = catalog;
  if (!seed.empty()) cfg.seed_path = seed;
  if (!out.empty()) cfg.out_dir = out;
  try {
    if (!grid.empty()) cfg.grid = parse_grid(grid);
  } catch (const std::exception&) {
    std::cerr << "error: --grid expects comma-separated integers\n";
    return wintgen::kExitBadInput;
  }

  const wintgen::RunResult res = wintgen::run_command(cfg);
  if (!res.diagnostic.empty()) std::cerr << "error: " << res.diagnostic << '\n';
  if (cfg.out_dir) {
    if (res.report.contains("summary")) std::cout << res.report["summary"].dump() << '\n';
  } else {
    std::cout << wintgen::format_report(res.report);
  }
  return res.exit_code;
}
