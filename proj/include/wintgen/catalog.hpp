#pragma once

// Named charts and seeds with known answers, plus random trigonometric
// charts for fuzzing the DDVV inequality.

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"
#include "wintgen/chart.hpp"

namespace wintgen {

struct ExpectedValues {
  std::optional<bool> wintgen;
  bool umbilic = false;
  std::optional<double> K;
  std::optional<double> K_N;
  std::optional<double> H_sq;
  std::optional<double> deficit;
  std::string origin;  // how the numbers were obtained
};

struct CatalogEntry {
  std::string name;
  std::string description;
  nlohmann::json document;  // chart ("expression"/"envelope") or {"kind": "seed", "seed": {...}}
  ExpectedValues expected;

  bool is_seed() const;
  ChartPtr chart() const;
  nlohmann::json to_json() const;
};

// StructuralError for an unknown name.
const CatalogEntry& get_entry(const std::string& name);
std::vector<std::string> catalog_names();

// Dispatches on "kind": expression (default), envelope, seed.
ChartPtr load_chart(const nlohmann::json& doc);

// f = g / |g| with g = (1.5 + t_0, sin(u_a) + t_a, t_{m+1}..) where the t
// are random sums of sin/cos of non-zero integer combinations of the u_a. Domain
// [-1, 1]^m. Coefficients are printed with 17 significant digits so the
// chart JSON reproduces the chart exactly.
std::shared_ptr<ExprChart> random_trig_chart(int m, int p, std::mt19937_64& rng);

}  // namespace wintgen
