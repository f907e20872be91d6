#include <cmath>

#include "doctest.h"
#include "wintgen/chart.hpp"
#include "wintgen/errors.hpp"

using namespace wintgen;

namespace {
std::shared_ptr<ExprChart> clifford() {
  return std::make_shared<ExprChart>(
      "clifford", 2, 2, Box{{0, 0}, {2 * M_PI, 2 * M_PI}},
      std::vector<std::string>{"cos(u1)/sqrt(2)", "sin(u1)/sqrt(2)", "cos(u2)/sqrt(2)", "sin(u2)/sqrt(2)", "0"});
}
}  // namespace

TEST_CASE("Clifford chart jet at the origin") {
  auto c = clifford();
  const double u[] = {0.0, 0.0};
  Jet4 j = eval_jet(*c, u, 4);
  const double r = 1.0 / std::sqrt(2.0);
  CHECK((j.value() - Eigen::Vector<double, 5>(r, 0, r, 0, 0)).norm() < 1e-15);
  const int du[] = {1, 0};
  CHECK((j.partial(du) - Eigen::Vector<double, 5>(0, r, 0, 0, 0)).norm() < 1e-15);
  const int duv[] = {1, 1};
  CHECK(j.partial(duv).norm() == 0.0);
  const int du4[] = {4, 0};
  CHECK(j.partial(du4)(0) == doctest::Approx(r).epsilon(1e-14));
  // independent check with central differences at h = 1e-2
  CHECK(fd_partial(*c, u, du4, 1e-2)(0) == doctest::Approx(r).epsilon(1e-6));
}

TEST_CASE("jet derivatives agree with the finite-difference backend") {
  auto c = std::make_shared<ExprChart>(
      "veronese", 2, 2, Box{{0.3, 0}, {M_PI - 0.3, 2 * M_PI}},
      std::vector<std::string>{
          "sqrt(3)*cos(u1)*sin(u1)*sin(u2)", "sqrt(3)*cos(u1)*sin(u1)*cos(u2)",
          "sqrt(3)*sin(u1)^2*cos(u2)*sin(u2)", "sqrt(3)/2*sin(u1)^2*(cos(u2)^2 - sin(u2)^2)",
          "(sin(u1)^2 - 2*cos(u1)^2)/2"});
  const double u[] = {1.1, 0.4};
  Jet4 j = eval_jet(*c, u, 4);
  for (int a = 0; a <= 4; ++a) {
    for (int b = 0; a + b <= 4; ++b) {
      const int alpha[] = {a, b};
      const Eigen::VectorXd exact = j.partial(alpha);
      const Eigen::VectorXd fd = fd_partial(*c, u, alpha, 1e-2);
      for (int k = 0; k < exact.size(); ++k) {
        CHECK(std::abs(exact(k) - fd(k)) <= 1e-6 * std::max(1.0, std::abs(exact(k))));
      }
    }
  }
}

TEST_CASE("chart documents") {
  nlohmann::json doc = {{"dim_m", 2},
                        {"codim_p", 1},
                        {"domain", {{0, 1}, {0, 1}}},
                        {"components", {"cos(u1)", "sin(u1)*cos(u2)", "sin(u1)*sin(u2)", "0"}}};
  auto c = expr_chart_from_json(doc);
  CHECK(c->dim_m() == 2);
  CHECK(c->to_json()["components"][1] == "sin(u1)*cos(u2)");
  doc["components"].erase(0);
  CHECK_THROWS_AS(expr_chart_from_json(doc), StructuralError);
  CHECK_THROWS_AS(expr_chart_from_json(nlohmann::json{{"dim_m", 2}}), StructuralError);
}

TEST_CASE("cell-centered grids") {
  Box b{{0, 0}, {1, 2}};
  const int counts[] = {2, 4};
  auto g = cell_grid(b, counts);
  REQUIRE(g.size() == 8);
  CHECK(g[0][0] == doctest::Approx(0.25));
  CHECK(g[0][1] == doctest::Approx(0.25));
  CHECK(g[7][1] == doctest::Approx(1.75));
}
