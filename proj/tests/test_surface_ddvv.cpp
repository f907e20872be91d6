#include <cmath>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracle/fd_curvature.hpp"
#include "wintgen/ddvv.hpp"
#include "wintgen/errors.hpp"
#include "wintgen/surface_geometry.hpp"

using namespace wintgen;

TEST_CASE("Veronese curvatures match the finite-difference oracle") {
  auto chart = fixtures::veronese();
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> th(0.4, M_PI - 0.4), ph(0.1, 2 * M_PI - 0.1);
  for (int k = 0; k < 10; ++k) {
    const double u[] = {th(rng), ph(rng)};
    const PointGeometry pg = fundamental_forms(*chart, u);
    const oracle::Curvatures o = oracle::curvatures(oracle::veronese, Eigen::Vector2d(u[0], u[1]), 2);
    CHECK(pg.K == doctest::Approx(o.K).epsilon(1e-6));
    CHECK(pg.K_N == doctest::Approx(o.K_N).epsilon(1e-6));
    CHECK(pg.K == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
    CHECK(pg.K_N == doctest::Approx(2.0 / 3.0).epsilon(1e-10));
    CHECK(std::abs(ddvv_deficit(pg)) < 1e-10);
    CHECK(intrinsic_scalar_curvature(*chart, u) == doctest::Approx(pg.K).epsilon(1e-8));
  }
}

TEST_CASE("Clifford torus saturates nothing") {
  auto chart = fixtures::clifford();
  for (double a : {0.0, 0.7, 2.1}) {
    const double u[] = {a, 1.3 - a};
    const PointGeometry pg = fundamental_forms(*chart, u);
    const oracle::Curvatures o = oracle::curvatures(oracle::clifford_s4, Eigen::Vector2d(u[0], u[1]), 2);
    CHECK(pg.K == doctest::Approx(o.K).epsilon(1e-6));
    CHECK(std::abs(pg.K) < 1e-12);
    CHECK(std::abs(pg.K_N) < 1e-12);
    CHECK(ddvv_deficit(pg) == doctest::Approx(1.0).epsilon(1e-12));
    const DdvvReport rep = ddvv_report(pg);
    CHECK_FALSE(rep.umbilic);
    CHECK(wintgen_verdict(rep, 1e-6).reason == "deficit");
    CHECK_THROWS_AS(fit_canonical_frames(pg, 1e-6), FitError);
  }
}

TEST_CASE("totally geodesic sphere is reported umbilic") {
  auto chart = fixtures::great_sphere();
  const double u[] = {1.0, 2.0};
  const DdvvReport rep = ddvv_report(fundamental_forms(*chart, u));
  CHECK(rep.umbilic);
  CHECK(std::abs(rep.deficit) < 1e-12);
  CHECK(wintgen_verdict(rep, 1e-6).reason == "umbilic");
  CHECK_FALSE(is_wintgen_ideal(rep, 1e-6));
}

TEST_CASE("curvatures do not depend on the frame gauge") {
  auto chart = fixtures::veronese();
  const double u[] = {1.2, 0.5};
  const PointGeometry pg = fundamental_forms(*chart, u);
  const double t = 0.83, s = -1.9;
  Eigen::Matrix2d qt, qn;
  qt << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
  qn << std::cos(s), std::sin(s), std::sin(s), -std::cos(s);
  const PointGeometry rg = regauge(pg, qt, qn);
  const ScalarCurvatures a = scalar_curvatures(pg), b = scalar_curvatures(rg);
  CHECK(std::abs(a.K - b.K) < 1e-12);
  CHECK(std::abs(a.K_N - b.K_N) < 1e-12);
  CHECK(std::abs(ddvv_deficit(pg) - ddvv_deficit(rg)) < 1e-12);
}

TEST_CASE("canonical fit recovers a synthetic Wintgen pattern") {
  const int m = 3, p = 3;
  auto pattern = wintgen_pattern(m, p, 0.5, -0.2, 0.1, 1.0);
  std::mt19937_64 rng(11);
  std::normal_distribution<double> nd;
  Eigen::MatrixXd rt = Eigen::MatrixXd::NullaryExpr(m, m, [&] { return nd(rng); });
  Eigen::MatrixXd rn = Eigen::MatrixXd::NullaryExpr(p, p, [&] { return nd(rng); });
  const Eigen::MatrixXd qt = Eigen::HouseholderQR<Eigen::MatrixXd>(rt).householderQ();
  const Eigen::MatrixXd qn = Eigen::HouseholderQR<Eigen::MatrixXd>(rn).householderQ();
  // scrambled operators: A'_s = sum_r qn(s, r) qt A_r qt^T
  std::vector<Eigen::MatrixXd> ops(p, Eigen::MatrixXd::Zero(m, m));
  for (int s = 0; s < p; ++s)
    for (int r = 0; r < p; ++r) ops[s] += qn(s, r) * qt * pattern[r] * qt.transpose();

  const CanonicalFit free_fit = fit_canonical_frames(ops, 1e-10);
  CHECK(free_fit.residual <= 1e-10);
  CHECK(free_fit.mu0 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::hypot(free_fit.lambda1, free_fit.lambda2) == doctest::Approx(std::hypot(0.5, -0.2)).epsilon(1e-12));
  CHECK(std::abs(free_fit.lambda3) == doctest::Approx(0.1).epsilon(1e-12));

  ReferenceFrames ref{qt, qn};
  const CanonicalFit fit = fit_canonical_frames(ops, 1e-10, &ref);
  CHECK(fit.lambda1 == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(fit.lambda2 == doctest::Approx(-0.2).epsilon(1e-12));
  CHECK(fit.lambda3 == doctest::Approx(0.1).epsilon(1e-12));
  CHECK((fit.tangent - qt).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("canonical fit keeps the sign of lambda3 from the reference") {
  const int m = 3, p = 3;
  auto pattern = wintgen_pattern(m, p, 0.3, 0.4, -0.7, 0.8);
  std::mt19937_64 rng(12);
  std::normal_distribution<double> nd;
  const Eigen::MatrixXd qt =
      Eigen::HouseholderQR<Eigen::MatrixXd>(Eigen::MatrixXd::NullaryExpr(m, m, [&] { return nd(rng); })).householderQ();
  const Eigen::MatrixXd qn =
      Eigen::HouseholderQR<Eigen::MatrixXd>(Eigen::MatrixXd::NullaryExpr(p, p, [&] { return nd(rng); })).householderQ();
  std::vector<Eigen::MatrixXd> ops(p, Eigen::MatrixXd::Zero(m, m));
  for (int s = 0; s < p; ++s)
    for (int r = 0; r < p; ++r) ops[s] += qn(s, r) * qt * pattern[r] * qt.transpose();
  ReferenceFrames ref{qt, qn};
  const CanonicalFit fit = fit_canonical_frames(ops, 1e-10, &ref);
  CHECK(fit.lambda3 == doctest::Approx(-0.7).epsilon(1e-12));
  CHECK((fit.normal - qn).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("canonical fit on the Veronese surface") {
  auto chart = fixtures::veronese();
  for (double th : {0.5, 1.3, 2.4}) {
    const double u[] = {th, 0.9};
    const PointGeometry pg = fundamental_forms(*chart, u);
    const CanonicalFit fit = fit_canonical_frames(pg, 1e-8);
    CHECK(fit.residual <= 1e-8);
    CHECK(std::abs(fit.lambda1) < 1e-10);
    CHECK(std::abs(fit.lambda2) < 1e-10);
    CHECK(fit.mu0 == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-10));
  }
}

TEST_CASE("canonical fit rejects vanishing traceless part") {
  std::vector<Eigen::MatrixXd> ops{2.0 * Eigen::MatrixXd::Identity(3, 3), Eigen::MatrixXd::Zero(3, 3)};
  CHECK_THROWS_AS(fit_canonical_frames(ops, 1e-8), DegeneracyError);
}
