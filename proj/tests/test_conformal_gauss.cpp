#include <cmath>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "wintgen/conformal_gauss.hpp"
#include "wintgen/errors.hpp"
#include "wintgen/moebius_frame.hpp"

using namespace wintgen;

namespace {

std::shared_ptr<ExprChart> bumpy_m2() {
  const std::string d = "sqrt((1.5 + 0.2*sin(u1))^2 + cos(u1 + u2)^2 + (0.3*sin(2*u2))^2 + (u1*u2)^2 + 0.25)";
  return std::make_shared<ExprChart>(
      "bumpy", 2, 3, Box{{-1, -1}, {1, 1}},
      std::vector<std::string>{"(1.5 + 0.2*sin(u1))/" + d, "cos(u1 + u2)/" + d, "0.3*sin(2*u2)/" + d, "u1*u2/" + d,
                               "0.5/" + d, "0"});
}

}  // namespace

TEST_CASE("Gauss map is a spacelike subspace and moves with the chart") {
  auto chart = fixtures::hopf_veronese();
  const double u[] = {0.1, 0.4, -0.7};
  const GrassmannPoint xi = gauss_map(*chart, u);
  const Eigen::MatrixXd gram = xi.frame.transpose() * lorentz_metric(7) * xi.frame;
  CHECK((gram - Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
  std::mt19937_64 rng(3);
  for (int k = 0; k < 3; ++k) {
    const Eigen::MatrixXd T = random_lorentz_transform(7, rng, 0.5);
    TransformedChart moved(chart, T);
    const GrassmannPoint image = gauss_map(moved, u);
    CHECK(image.distance(GrassmannPoint{T * xi.frame}) <= 1e-7);
  }
}

TEST_CASE("minimal charts have xi = (0, n)") {
  auto chart = fixtures::veronese();
  const double u[] = {1.3, 2.2};
  const MoebiusFrame fr = build_frame(*chart, u);
  for (int r = 0; r < 2; ++r) {
    CHECK(std::abs(fr.xi[r](0)) < 1e-12);
    CHECK((fr.xi[r].tail(5) - fr.normals.col(r)).norm() < 1e-12);
  }
}

TEST_CASE("certificates on the Veronese surface") {
  auto chart = fixtures::veronese();
  const double u[] = {1.0, 0.8};
  const double steps[] = {1e-2, 5e-3, 2.5e-3};
  const ConvergenceStudy st = convergence_study(*chart, u, steps);
  for (std::size_t k = 0; k < 2; ++k) {
    CHECK(st.tension_ratios[k] == doctest::Approx(4.0).epsilon(0.1));
    CHECK(st.circle_ratios[k] == doctest::Approx(4.0).epsilon(0.1));
  }
  const GaussMapCertificate c = gauss_map_certificate(*chart, u, 1e-3);
  CHECK(c.canonical_frame);
  REQUIRE(c.singular_values.size() == 2);
  CHECK(std::abs(c.singular_values[0] - std::sqrt(2.0)) <= 1e-3);
  CHECK(std::abs(c.singular_values[1] - std::sqrt(2.0)) <= 1e-3);
  CHECK(c.ellipse.circle_residual <= 1e-4);
  CHECK(c.tension_norm <= 1e-4);
  CHECK(c.submersion_residual <= 1e-4);
}

TEST_CASE("certificates on a three-dimensional Wintgen ideal chart") {
  auto chart = fixtures::hopf_veronese();
  const double u[] = {0.3, -0.2, 0.5};
  const GaussMapCertificate c = gauss_map_certificate(*chart, u, 1e-3);
  CHECK(c.rank(10 * c.h) == 2);
  CHECK(std::abs(c.singular_values[0] - std::sqrt(2.0)) <= 1e-3);
  CHECK(std::abs(c.singular_values[1] - std::sqrt(2.0)) <= 1e-3);
  CHECK(c.singular_values[2] <= 1e-3);
  CHECK(c.tension_norm <= 1e-4);
  CHECK(c.ellipse.circle_residual <= 1e-4);
  CHECK(c.fiber_angle <= 1e-6);
  CHECK(c.submersion_ratio == doctest::Approx(1.0).epsilon(1e-5));

  SUBCASE("rotating E1, E2 leaves the certificate unchanged") {
    CertificateOptions o;
    o.gauge_angle = 0.7;
    const GaussMapCertificate r = gauss_map_certificate(*chart, u, 1e-3, o);
    for (int k = 0; k < 3; ++k) CHECK(std::abs(r.singular_values[k] - c.singular_values[k]) < 1e-5);
    CHECK(r.tension_norm <= 1e-4);
    CHECK(r.ellipse.circle_residual <= 1e-4);
  }
  SUBCASE("a sphere congruence other than the mean curvature sphere fails") {
    CertificateOptions o;
    o.control_shift = 1.0;
    CHECK(gauss_map_certificate(*chart, u, 1e-3, o).tension_norm >= 0.1);
  }
}

TEST_CASE("non-Wintgen charts keep full rank") {
  auto chart = bumpy_m2();
  const double u[] = {0.2, -0.1};
  const GaussMapCertificate a = gauss_map_certificate(*chart, u, 1e-2);
  const GaussMapCertificate b = gauss_map_certificate(*chart, u, 1e-3);
  CHECK_FALSE(b.canonical_frame);
  CHECK(b.singular_values[1] > 0.05);
  CHECK(std::abs(a.singular_values[1] - b.singular_values[1]) < 5e-3);
}

TEST_CASE("certificate stencils stay inside the domain") {
  auto chart = fixtures::veronese();
  const double u[] = {0.3005, 1.0};
  CHECK_THROWS_AS(gauss_map_certificate(*chart, u, 1e-2), DomainError);
}
