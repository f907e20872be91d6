#include <cmath>
#include <random>

#include "doctest.h"
#include "oracle/fd_curvature.hpp"
#include "wintgen/catalog.hpp"
#include "wintgen/ddvv.hpp"
#include "wintgen/errors.hpp"
#include "wintgen/moebius_frame.hpp"
#include "wintgen/surface_geometry.hpp"

using namespace wintgen;

TEST_CASE("catalog registry") {
  const auto names = catalog_names();
  for (const char* n : {"veronese_s4", "clifford_torus_s3_in_s4", "totally_geodesic_s2_s4", "hopf_veronese_s5",
                        "helicoid_seed_m3"})
    CHECK(std::find(names.begin(), names.end(), n) != names.end());
  CHECK_THROWS_AS(get_entry("no_such_surface"), StructuralError);
  CHECK(get_entry("clifford_torus_s3_in_s4").expected.wintgen == false);
  CHECK(get_entry("totally_geodesic_s2_s4").expected.umbilic);
  CHECK(get_entry("helicoid_seed_m3").is_seed());
  CHECK(get_entry("veronese_s4").to_json()["expected"]["origin"].is_string());
  CHECK_THROWS_AS(load_chart(nlohmann::json{{"kind", "torus"}}), StructuralError);
}

TEST_CASE("veronese expected values match the curvature oracle") {
  const CatalogEntry& e = get_entry("veronese_s4");
  REQUIRE(e.expected.K);
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> a(0.5, M_PI - 0.5), b(0.2, 2 * M_PI - 0.2);
  for (int k = 0; k < 10; ++k) {
    Eigen::VectorXd u(2);
    u << a(rng), b(rng);
    const oracle::Curvatures c = oracle::curvatures(oracle::veronese, u, 2);
    CHECK(std::abs(c.K - *e.expected.K) <= 1e-6);
    CHECK(std::abs(c.K_N - *e.expected.K_N) <= 1e-6);
  }
  Eigen::VectorXd u(2);
  u << 1.1, 0.4;
  const oracle::Curvatures c = oracle::curvatures(oracle::clifford_s4, u, 2);
  const ExpectedValues& ce = get_entry("clifford_torus_s3_in_s4").expected;
  CHECK(std::abs(1.0 + c.H_sq - c.K_N - c.K - *ce.deficit) <= 1e-6);
}

TEST_CASE("every entry reproduces its expected block") {
  for (const auto& name : catalog_names()) {
    CAPTURE(name);
    const CatalogEntry& e = get_entry(name);
    const ChartPtr chart = e.chart();
    const int m = chart->dim_m();
    std::vector<int> counts(static_cast<std::size_t>(m), m == 2 ? 4 : 3);
    Box inner = chart->domain();
    for (int a = 0; a < m; ++a) {
      const double w = 0.05 * (inner.hi[a] - inner.lo[a]);
      inner.lo[a] += w;
      inner.hi[a] -= w;
    }
    const auto points = cell_grid(inner, counts);
    const ChartValidation v = validate_chart(*chart, points);
    CHECK(v.sphericity_ok);
    CHECK(v.rank_ok);
    CHECK(v.failures.empty());
    CHECK(v.umbilic_suspects.size() == (e.expected.umbilic ? points.size() : 0u));
    for (const auto& u : points) {
      const PointGeometry pg = fundamental_forms(*chart, u);
      const DdvvReport r = ddvv_report(pg);
      CHECK(r.umbilic == e.expected.umbilic);
      if (e.expected.wintgen) CHECK(is_wintgen_ideal(r, 1e-6) == *e.expected.wintgen);
      if (e.expected.K) CHECK(std::abs(r.K - *e.expected.K) <= 1e-6);
      if (e.expected.K_N) CHECK(std::abs(r.K_N - *e.expected.K_N) <= 1e-6);
      if (e.expected.H_sq) CHECK(std::abs(r.H_sq - *e.expected.H_sq) <= 1e-6);
      if (e.expected.deficit) CHECK(std::abs(r.deficit - *e.expected.deficit) <= 1e-6);
    }
  }
}

TEST_CASE("random trigonometric charts") {
  std::mt19937_64 a(99), b(99);
  for (int m : {2, 3}) {
    for (int p : {1, 2, 3}) {
      auto c1 = random_trig_chart(m, p, a);
      auto c2 = random_trig_chart(m, p, b);
      CHECK(c1->to_json().dump() == c2->to_json().dump());
      CHECK(c1->ambient_dim() == m + p + 1);
      const ChartPtr back = load_chart(c1->to_json());
      const std::vector<double> u(static_cast<std::size_t>(m), 0.3);
      CHECK((back->value(u) - c1->value(u)).norm() == 0.0);
      const int counts[] = {3, 3, 3};
      const ChartValidation v = validate_chart(*c1, cell_grid(c1->domain(), std::span<const int>(counts, m)));
      CHECK(v.sphericity_ok);
      CHECK(v.failures.empty());
    }
  }
}

TEST_CASE("catalog charts: jets against finite differences, Gauss equation, <N, Y> = 1") {
  for (const auto& name : catalog_names()) {
    CAPTURE(name);
    const ChartPtr chart = get_entry(name).chart();
    const int m = chart->dim_m();
    const std::vector<double> u = chart->domain().center();
    const Jet4 jet = eval_jet(*chart, u, 3);
    // all multi-indices of order 1..3
    std::vector<std::vector<int>> alphas;
    for (int a = 0; a < m; ++a) {
      alphas.push_back({a});
      for (int b = a; b < m; ++b) {
        alphas.push_back({a, b});
        for (int c = b; c < m; ++c) alphas.push_back({a, b, c});
      }
    }
    for (const auto& vars : alphas) {
      std::vector<int> alpha(static_cast<std::size_t>(m), 0);
      for (int a : vars) alpha[static_cast<std::size_t>(a)]++;
      const Eigen::VectorXd exact = jet.partial(alpha);
      const Eigen::VectorXd fd = fd_partial(*chart, u, alpha, 1e-2);
      CHECK((exact - fd).norm() <= 1e-6 * std::max(1.0, exact.norm()));
    }
    const PointGeometry pg = fundamental_forms(*chart, u);
    CHECK(std::abs(intrinsic_scalar_curvature(*chart, u) - pg.K) <= 1e-6);
    if (!get_entry(name).expected.umbilic) {
      const MoebiusFrame fr = build_frame(*chart, u);
      CHECK(std::abs(inner(fr.N, fr.Y) - 1.0) <= 1e-12);
    }
  }
}
