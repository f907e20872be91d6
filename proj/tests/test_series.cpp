#include <cmath>
#include <numbers>

#include "doctest.h"
#include "wintgen/errors.hpp"
#include "wintgen/expression.hpp"
#include "wintgen/series.hpp"

using namespace wintgen;

TEST_CASE("series partials of a product match hand derivatives") {
  auto layout = MonomialLayout::get(2, 4);
  RSeries x = RSeries::variable(layout, 0, 0.3);
  RSeries y = RSeries::variable(layout, 1, -0.7);
  RSeries f = x * x * y + sin(x * y);
  const int a21[] = {2, 1};
  const double X = 0.3, Y = -0.7, s = std::sin(X * Y), c = std::cos(X * Y);
  const double expect = 2.0 + (-2.0 * Y * s - X * Y * Y * c);
  CHECK(f.partial(a21) == doctest::Approx(expect).epsilon(1e-13));
}

TEST_CASE("mixed partials are stored once") {
  auto layout = MonomialLayout::get(3, 4);
  RSeries x = RSeries::variable(layout, 0, 0.1);
  RSeries y = RSeries::variable(layout, 1, 0.2);
  RSeries z = RSeries::variable(layout, 2, 0.3);
  RSeries f = exp(x * y) * cos(z + x);
  CHECK(f.derivative(0).derivative(1).value() == f.derivative(1).derivative(0).value());
  CHECK(f.derivative(0).derivative(2).derivative(1).value() == f.derivative(2).derivative(1).derivative(0).value());
}

TEST_CASE("elementary functions agree with std at the base point and first derivative") {
  auto layout = MonomialLayout::get(1, 3);
  RSeries x = RSeries::variable(layout, 0, 0.8);
  CHECK(log(x).derivative(0).value() == doctest::Approx(1.0 / 0.8));
  CHECK(sqrt(x).derivative(0).value() == doctest::Approx(0.5 / std::sqrt(0.8)));
  CHECK(pow(x, 3.0).derivative(0).derivative(0).value() == doctest::Approx(6 * 0.8));
  CHECK(pow(x, -1.5).derivative(0).value() == doctest::Approx(-1.5 * std::pow(0.8, -2.5)));
  CHECK(cosh(x).derivative(0).derivative(0).derivative(0).value() == doctest::Approx(std::sinh(0.8)));
  CHECK((1.0 / x).derivative(0).value() == doctest::Approx(-1.0 / 0.64));
}

TEST_CASE("complex series carry holomorphic derivatives") {
  auto layout = MonomialLayout::get(2, 3);
  CSeries x = CSeries::variable(layout, 0, 0.2);
  CSeries y = CSeries::variable(layout, 1, 0.5);
  CSeries z = x + std::complex<double>(0, 1) * y;
  CSeries w = exp(z * z);
  const std::complex<double> z0(0.2, 0.5);
  // d/dx = d/dz for holomorphic w; d/dy = i d/dz
  CHECK(std::abs(w.derivative(0).value() - 2.0 * z0 * std::exp(z0 * z0)) < 1e-13);
  CHECK(std::abs(w.derivative(1).value() - std::complex<double>(0, 1) * 2.0 * z0 * std::exp(z0 * z0)) < 1e-13);
}

TEST_CASE("expression parser handles precedence and constants") {
  const std::vector<std::string> vars{"u1", "u2"};
  auto e = Expression::parse("2 + 3*u1^2 - u2/4 + sin(pi/2)", vars);
  const double v[] = {2.0, 8.0};
  CHECK(e.evaluate_real(v) == doctest::Approx(2 + 12 - 2 + 1));
  auto neg = Expression::parse("-u1^2", vars);
  CHECK(neg.evaluate_real(v) == doctest::Approx(-4.0));
  auto right = Expression::parse("2^3^2", vars);
  CHECK(right.evaluate_real(v) == doctest::Approx(512.0));
}

TEST_CASE("expression errors name the offending sub-expression") {
  const std::vector<std::string> vars{"u1", "u2"};
  CHECK_THROWS_AS(Expression::parse("u3 + 1", vars), StructuralError);
  CHECK_THROWS_AS(Expression::parse("foo(u1)", vars), StructuralError);
  CHECK_THROWS_AS(Expression::parse("(u1 + 1", vars), StructuralError);
  auto e = Expression::parse("cos(u1) + sqrt(u2 - 1)", vars);
  const double v[] = {0.0, 0.5};
  try {
    e.evaluate_real(v);
    FAIL("expected an evaluation error");
  } catch (const EvaluationError& err) {
    CHECK(err.reason() == "sqrt of a negative value");
    CHECK(err.path().find("sqrt(u2 - 1)") != std::string::npos);
  }
  auto d = Expression::parse("1/(u1 - u1)", vars);
  CHECK_THROWS_AS(d.evaluate_real(v), EvaluationError);
}

TEST_CASE("complex expressions accept the imaginary unit") {
  const std::vector<std::string> vars{"z"};
  auto e = Expression::parse("i*z^2 - cosh(z)", vars, true);
  const std::complex<double> z(0.3, -0.4);
  const std::complex<double> v[] = {z};
  CHECK(std::abs(e.evaluate_complex(v) - (std::complex<double>(0, 1) * z * z - std::cosh(z))) < 1e-14);
  CHECK_THROWS_AS(Expression::parse("i*u1", {"u1"}), StructuralError);
}
