#pragma once

#include <cmath>
#include <memory>

#include "wintgen/chart.hpp"

namespace fixtures {

inline std::shared_ptr<wintgen::ExprChart> veronese() {
  return std::make_shared<wintgen::ExprChart>(
      "veronese", 2, 2, wintgen::Box{{0.3, 0}, {M_PI - 0.3, 2 * M_PI}},
      std::vector<std::string>{"sqrt(3)*cos(u1)*sin(u1)*sin(u2)", "sqrt(3)*cos(u1)*sin(u1)*cos(u2)",
                               "sqrt(3)*sin(u1)^2*cos(u2)*sin(u2)", "sqrt(3)/2*sin(u1)^2*(cos(u2)^2 - sin(u2)^2)",
                               "(sin(u1)^2 - 2*cos(u1)^2)/2"});
}

inline std::shared_ptr<wintgen::ExprChart> clifford() {
  return std::make_shared<wintgen::ExprChart>(
      "clifford", 2, 2, wintgen::Box{{-10, -10}, {10, 10}},
      std::vector<std::string>{"cos(u1)/sqrt(2)", "sin(u1)/sqrt(2)", "cos(u2)/sqrt(2)", "sin(u2)/sqrt(2)", "0"});
}

inline std::shared_ptr<wintgen::ExprChart> great_sphere() {
  return std::make_shared<wintgen::ExprChart>(
      "great_sphere", 2, 2, wintgen::Box{{0.3, 0}, {M_PI - 0.3, 2 * M_PI}},
      std::vector<std::string>{"sin(u1)*cos(u2)", "sin(u1)*sin(u2)", "cos(u1)", "0", "0"});
}

}  // namespace fixtures

namespace fixtures {

// e^{it} (1, sqrt(2) z, z^2) / (1 + |z|^2) in C^3, z = u1 + i u2, t = u3.
inline std::shared_ptr<wintgen::ExprChart> hopf_veronese() {
  const std::string d = "(1 + u1^2 + u2^2)";
  const std::string re2 = "(u1^2 - u2^2)", im2 = "(2*u1*u2)";
  return std::make_shared<wintgen::ExprChart>(
      "hopf_veronese", 3, 2, wintgen::Box{{-1, -1, -3}, {1, 1, 3}},
      std::vector<std::string>{
          "cos(u3)/" + d, "sin(u3)/" + d, "sqrt(2)*(u1*cos(u3) - u2*sin(u3))/" + d,
          "sqrt(2)*(u1*sin(u3) + u2*cos(u3))/" + d, "(" + re2 + "*cos(u3) - " + im2 + "*sin(u3))/" + d,
          "(" + re2 + "*sin(u3) + " + im2 + "*cos(u3))/" + d});
}

}  // namespace fixtures

#include "wintgen/envelope.hpp"

namespace fixtures {

// Null curve from the helicoid: W_z = (-i sinh z, -cosh z, i, 0, 0).
inline wintgen::WeierstrassSeed helicoid_seed() {
  wintgen::WeierstrassSeed s;
  s.name = "helicoid";
  s.m = 3;
  s.domain = wintgen::Box{{-1, -1.5}, {1, 1.5}};
  s.components = {"-i*cosh(z)", "-sinh(z)", "i*z", "0", "0"};
  return s;
}

}  // namespace fixtures
