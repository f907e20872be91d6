#pragma once

// The four commands behind the wintgen-kit CLI. Each resolves its input,
// evaluates a grid in a worker pool, and assembles a JSON report in grid
// order, so the output does not depend on the number of workers.
//
// Exit codes: 0 ok, 1 violation, 2 bad input, 3 umbilic everywhere,
// 4 degenerate seed.

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "wintgen/chart.hpp"

namespace wintgen {

inline constexpr const char* kReportSchema = "wintgen-kit/1";

enum ExitCode : int {
  kExitOk = 0,
  kExitViolation = 1,
  kExitBadInput = 2,
  kExitUmbilic = 3,
  kExitDegenerateSeed = 4,
};

struct RunConfig {
  std::string command;  // check | invariants | gaussmap | construct
  std::optional<std::string> chart_path;
  std::optional<std::string> catalog;
  std::optional<std::string> seed_path;
  std::vector<int> grid;  // per-axis counts; empty picks a default
  double h = 1e-3;
  double tol = 1e-6;
  std::optional<std::filesystem::path> out_dir;  // report.json and meshes go here
  std::uint64_t rng_seed = 1;
  int threads = 0;  // 0: WINTGEN_THREADS or hardware concurrency
};

struct RunResult {
  int exit_code = kExitOk;
  nlohmann::json report;
  std::string diagnostic;  // set for exit codes 2 and 4
};

// StructuralError for an inconsistent config (grid counts < 2, tol <= 0, ...).
void validate_config(const RunConfig& config);

RunResult run_command(const RunConfig& config);
RunResult cmd_check(const RunConfig& config);
RunResult cmd_invariants(const RunConfig& config);
RunResult cmd_gaussmap(const RunConfig& config);
RunResult cmd_construct(const RunConfig& config);

// Workers to use: config value, else WINTGEN_THREADS, else the hardware.
int worker_count(int requested);

// Report text as written to report.json.
std::string format_report(const nlohmann::json& report);

struct Mesh {
  std::vector<Eigen::Vector3d> vertices;
  std::vector<std::array<int, 3>> faces;  // 0-based
  std::vector<std::vector<int>> polylines;
};

// OBJ faces and lines are written 1-based, PLY 0-based.
void write_obj(const std::filesystem::path& path, const Mesh& mesh);
void write_ply(const std::filesystem::path& path, const Mesh& mesh);

// Stereographic projection from -e_last followed by the first three
// coordinates; used to draw points of S^n in R^3.
Eigen::Vector3d display_point(const Eigen::VectorXd& x);

}  // namespace wintgen
