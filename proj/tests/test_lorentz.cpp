#include <cmath>
#include <random>

#include "doctest.h"
#include "wintgen/lorentz.hpp"

using namespace wintgen;

namespace {
LorentzVec vec(std::initializer_list<double> xs) {
  LorentzVec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index k = 0;
  for (double x : xs) v(k++) = x;
  return v;
}
}  // namespace

TEST_CASE("inner product signature and causal type") {
  CHECK(inner(vec({1, 0, 0, 0}), vec({1, 0, 0, 0})) == -1.0);
  CHECK(inner(vec({1, 1, 0, 0}), vec({1, 1, 0, 0})) == 0.0);
  CHECK(classify(vec({1, 0, 0})) == CausalType::Timelike);
  CHECK(classify(vec({1, 1, 0})) == CausalType::Lightlike);
  CHECK(classify(vec({0, 1, 0})) == CausalType::Spacelike);
  CHECK_THROWS_AS(inner(vec({1, 0}), vec({1, 0, 0})), StructuralError);
}

TEST_CASE("light-cone lift") {
  CHECK(lift_to_light_cone(vec({1, 0, 0})).isApprox(vec({1, 1, 0, 0})));
  CHECK(lift_to_light_cone(vec({0, 0, 1})).isApprox(vec({1, 0, 0, 1})));
  CHECK_THROWS_AS(lift_to_light_cone(vec({1.01, 0, 0})), DomainError);
  try {
    lift_to_light_cone(vec({0, 2, 0}));
  } catch (const DomainError& e) {
    CHECK(e.defect() == doctest::Approx(1.0));
  }
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  for (int t = 0; t < 50; ++t) {
    Eigen::VectorXd f(4), h(4);
    for (int k = 0; k < 4; ++k) {
      f(k) = g(rng);
      h(k) = g(rng);
    }
    f.normalize();
    h.normalize();
    const LorentzVec a = lift_to_light_cone(f);
    CHECK(std::abs(inner(a, a)) < 1e-15);
    CHECK(inner(a, lift_to_light_cone(h)) == doctest::Approx(-0.5 * (f - h).squaredNorm()).epsilon(1e-13));
  }
}

TEST_CASE("orthonormalize documented cases") {
  const std::vector<LorentzVec> a{vec({1, 0, 0}), vec({0, 2, 0})};
  auto b = orthonormalize(a, {1, 1});
  CHECK(b[0].isApprox(vec({1, 0, 0})));
  CHECK(b[1].isApprox(vec({0, 1, 0})));

  const std::vector<LorentzVec> c{vec({1, 1, 0}), vec({1, -1, 0})};
  auto d = orthonormalize(c, {1, 1});
  CHECK(d.orthonormality_defect() < 1e-12);
  // span preserved: third coordinate stays zero and both inputs are combinations
  Eigen::MatrixXd m = d.matrix();
  for (const auto& v : c) {
    Eigen::VectorXd coef = m.colPivHouseholderQr().solve(v);
    CHECK((m * coef - v).norm() < 1e-12);
  }

  const std::vector<LorentzVec> e{vec({1, 0, 0}), vec({0, 1, 0})};
  CHECK_THROWS_AS(orthonormalize(e, {0, 2}), GeometryError);
  const std::vector<LorentzVec> f{vec({1, 1, 0}), vec({2, 2, 0})};
  CHECK_THROWS_AS(orthonormalize(f, {1, 1}), DegeneracyError);
  const std::vector<LorentzVec> nul{vec({1, 1, 0}), vec({0, 0, 1})};
  CHECK_THROWS_AS(orthonormalize(nul, {1, 1}), GeometryError);
}

TEST_CASE("orthonormalize reproduces the signature on random inputs") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  int checked = 0;
  for (int t = 0; t < 1000; ++t) {
    const int n = 6;
    std::vector<LorentzVec> vs;
    for (int k = 0; k < 4; ++k) {
      LorentzVec v(n);
      for (int j = 0; j < n; ++j) v(j) = g(rng);
      vs.push_back(v);
    }
    Eigen::MatrixXd v(n, 4);
    for (int k = 0; k < 4; ++k) v.col(k) = vs[static_cast<std::size_t>(k)];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(v.transpose() * lorentz_metric(n) * v);
    const auto& l = eig.eigenvalues();
    const double minabs = l.cwiseAbs().minCoeff() / l.cwiseAbs().maxCoeff();
    if (minabs < 1e-3) continue;  // keep to well-conditioned spans
    const int neg = static_cast<int>((l.array() < 0).count());
    auto b = orthonormalize(vs, {neg, 4 - neg});
    CHECK(b.orthonormality_defect() <= 1e-8);
    ++checked;
  }
  CHECK(checked > 900);
}

TEST_CASE("null directions") {
  const std::vector<LorentzVec> s01{vec({1, 0, 0}), vec({0, 1, 0})};
  auto b = orthonormalize(s01, {1, 1});
  auto two = null_directions(b, 5);
  REQUIRE(two.size() == 2);
  CHECK(two[0].isApprox(vec({1, 1, 0})));
  CHECK(two[1].isApprox(vec({1, -1, 0})));

  const std::vector<LorentzVec> s12{vec({1, 0, 0, 0}), vec({0, 1, 0, 0}), vec({0, 0, 1, 0})};
  auto c = orthonormalize(s12, {1, 2});
  auto four = null_directions(c, 4);
  REQUIRE(four.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(std::abs(inner(four[i], four[i])) < 1e-14);
    for (std::size_t j = 0; j < 4; ++j) {
      const double theta = 2.0 * M_PI * (static_cast<double>(i) - static_cast<double>(j)) / 4.0;
      CHECK(inner(four[i], four[j]) == doctest::Approx(std::cos(theta) - 1.0));
    }
  }
  CHECK(null_directions(c, 0).empty());
  const std::vector<LorentzVec> sp{vec({0, 1, 0}), vec({0, 0, 1})};
  CHECK_THROWS_AS(null_directions(orthonormalize(sp, {0, 2}), 3), GeometryError);
}

TEST_CASE("random Lorentz transforms preserve the inner product") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  for (int t = 0; t < 20; ++t) {
    const Eigen::MatrixXd T = random_lorentz_transform(7, rng);
    CHECK((T.transpose() * lorentz_metric(7) * T - lorentz_metric(7)).cwiseAbs().maxCoeff() < 1e-12);
    LorentzVec a(7), b(7);
    for (int k = 0; k < 7; ++k) {
      a(k) = g(rng);
      b(k) = g(rng);
    }
    const double ab = inner(a, b);
    CHECK(std::abs(inner(T * a, T * b) - ab) <= 1e-10 * std::max(1.0, std::abs(ab)));
  }
}

TEST_CASE("principal angles and Procrustes") {
  Eigen::MatrixXd q1 = Eigen::MatrixXd::Zero(5, 2);
  q1(1, 0) = 1;
  q1(2, 1) = 1;
  CHECK(max_principal_angle(q1, q1) < 1e-8);
  Eigen::MatrixXd q2 = q1;
  const double t = 0.3;
  q2.col(1) = std::cos(t) * q1.col(1) + std::sin(t) * Eigen::VectorXd::Unit(5, 3);
  CHECK(max_principal_angle(q1, q2) == doctest::Approx(t));
  Eigen::Matrix2d r;
  r << std::cos(0.7), -std::sin(0.7), std::sin(0.7), std::cos(0.7);
  Eigen::MatrixXd rotated = q1 * r;
  Eigen::MatrixXd back = rotated * procrustes_rotation(rotated, q1);
  CHECK((back - q1).norm() < 1e-12);
}
