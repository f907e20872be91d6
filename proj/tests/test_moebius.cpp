#include <cmath>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "wintgen/ddvv.hpp"
#include "wintgen/errors.hpp"
#include "wintgen/moebius_frame.hpp"

using namespace wintgen;

namespace {

std::shared_ptr<ExprChart> generic_m3() {
  const std::vector<std::string> g{"1.7 + 0.3*sin(u1)", "cos(u1 + u2)", "sin(u2)*u3 + 0.2", "0.5*cos(u3)", "u1*u2", "sin(u1 - u3)"};
  std::string norm;
  for (const auto& c : g) norm += (norm.empty() ? "" : " + ") + std::string("(") + c + ")^2";
  std::vector<std::string> comps;
  for (const auto& c : g) comps.push_back("(" + c + ")/sqrt(" + norm + ")");
  return std::make_shared<ExprChart>("generic", 3, 2, Box{{-1, -1, -1}, {1, 1, 1}}, comps);
}

}  // namespace

TEST_CASE("Moebius frame of the Veronese surface") {
  auto chart = fixtures::veronese();
  const double u[] = {1.1, 0.7};
  const MoebiusFrame fr = build_frame(*chart, u);
  CHECK(fr.frame_defect() < 1e-10);
  CHECK(fr.B_norm_sq() == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(fr.B_trace_defect() < 1e-12);
  CHECK((fr.A - fr.A.transpose()).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(fr.C.cwiseAbs().maxCoeff() < 1e-10);
  CHECK(fr.rho == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));
  for (int k = 0; k < 2; ++k) {
    CHECK((fr.omega[k] + fr.omega[k].transpose()).cwiseAbs().maxCoeff() < 1e-10);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) CHECK(std::abs(inner(fr.dY[k][i], fr.Y) + (i == k ? 1.0 : 0.0)) < 1e-10);
  }
}

TEST_CASE("Moebius invariants survive a Lorentz transformation") {
  auto base = generic_m3();
  std::mt19937_64 rng(5);
  auto moved = std::make_shared<TransformedChart>(base, random_lorentz_transform(7, rng, 0.4));
  const double u[] = {0.2, -0.3, 0.4};
  const MoebiusFrame a = build_frame(*base, u);
  const MoebiusFrame b = build_frame(*moved, u);
  CHECK(a.frame_defect() < 1e-9);
  CHECK(b.frame_defect() < 1e-9);
  CHECK(a.B_norm_sq() == doctest::Approx(4.0).epsilon(1e-10));
  // the metric and the frames E_k agree, so all components agree up to the
  // normal gauge; compare gauge-free quantities
  CHECK((a.metric - b.metric).cwiseAbs().maxCoeff() < 1e-8 * a.metric.cwiseAbs().maxCoeff());
  CHECK((a.A - b.A).cwiseAbs().maxCoeff() < 1e-7 * std::max(1.0, a.A.cwiseAbs().maxCoeff()));
  CHECK(a.C_norm_sq() == doctest::Approx(b.C_norm_sq()).epsilon(1e-7));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double sa = 0, sb = 0;
      for (int r = 0; r < 2; ++r)
        for (int k = 0; k < 3; ++k) {
          sa += a.B[r](i, k) * a.B[r](k, j);
          sb += b.B[r](i, k) * b.B[r](k, j);
        }
      CHECK(std::abs(sa - sb) < 1e-8);
    }
}

TEST_CASE("umbilic points have no Moebius frame") {
  auto chart = fixtures::great_sphere();
  const double u[] = {1.0, 1.0};
  CHECK_THROWS_AS(build_frame(*chart, u), UmbilicError);
}

TEST_CASE("integrability residuals converge at second order") {
  for (auto chart : {std::shared_ptr<const Chart>(fixtures::veronese()), std::shared_ptr<const Chart>(generic_m3())}) {
    std::vector<double> u = chart->dim_m() == 2 ? std::vector<double>{1.0, 0.8} : std::vector<double>{0.1, 0.2, -0.3};
    const IntegrabilityResiduals r1 = integrability_residuals(*chart, u, 1e-2);
    const IntegrabilityResiduals r2 = integrability_residuals(*chart, u, 5e-3);
    if (chart->dim_m() == 2) CHECK(r1.max() < 1e-3);
    for (int e = 0; e < 5; ++e) {
      if (r1.equa[e] > 1e-9) CHECK(r1.equa[e] / r2.equa[e] == doctest::Approx(4.0).epsilon(0.15));
    }
  }
}

TEST_CASE("Wintgen invariants of Wintgen ideal charts") {
  for (auto chart : {std::shared_ptr<const Chart>(fixtures::veronese()), std::shared_ptr<const Chart>(fixtures::hopf_veronese())}) {
    const bool three = chart->dim_m() == 3;
    std::vector<double> u = three ? std::vector<double>{0.3, -0.2, 0.5} : std::vector<double>{1.0, 0.8};
    const MoebiusFrame fr = build_frame(*chart, u);
    CHECK(fr.B_norm_sq() == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(std::abs(ddvv_deficit(fundamental_forms(*chart, u))) < 1e-12);
    const WintgenInvariants w1 = wintgen_invariants(*chart, u, 1e-2);
    const WintgenInvariants w2 = wintgen_invariants(*chart, u, 5e-3);
    CHECK(w2.fit.mu0 == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(w2.moebius_form_residual < 1e-10);
    CHECK(w2.eta_residual < 1e-10);
    CHECK(std::abs(w2.U) < 1e-10);
    CHECK(std::abs(w2.V) < 1e-10);
    // finite-difference identities shrink by four under h-halving
    CHECK(w1.connection_residual / w2.connection_residual == doctest::Approx(4.0).epsilon(0.1));
    CHECK(w1.second_gauss_residual / w2.second_gauss_residual == doctest::Approx(4.0).epsilon(0.1));
    CHECK(w2.connection_residual < 1e-4);
    CHECK(w2.second_gauss_residual < 1e-4);
    CHECK(w2.has_eta3 == three);
    if (three) {
      CHECK(w2.L == doctest::Approx(1.0).epsilon(1e-4));
      CHECK(std::abs(w2.G - w2.G_alt) < 1e-8);
      CHECK(w2.F == doctest::Approx(0.5).epsilon(1e-6));
      CHECK(w1.eta_derivative_residual / w2.eta_derivative_residual == doctest::Approx(4.0).epsilon(0.1));
      CHECK(std::abs(inner(w2.eta3, w2.eta3) - 1.0) < 1e-8);
      CHECK(std::abs(inner(w2.Ytilde, w2.Ytilde)) < 1e-8);
      CHECK(std::abs(inner(w2.Ytilde, fr.Y) - 1.0) < 1e-8);
    } else {
      CHECK_THROWS_AS(wintgen_invariants(frame_derivatives(*chart, u, 1e-2), 1e-6, 1e-8, true), SingularInvariantError);
    }
  }
}

TEST_CASE("integrability on the Clifford torus") {
  const double u[] = {0.4, -1.1};
  // uniform angles: every frame quantity is constant, only rounding remains
  CHECK(integrability_residuals(*fixtures::clifford(), u, 1e-3).max() <= 1e-9);
  const auto sheared = std::make_shared<ExprChart>(
      "clifford_sheared", 2, 2, Box{{-10, -10}, {10, 10}},
      std::vector<std::string>{"cos(u1 + 0.3*sin(u2))/sqrt(2)", "sin(u1 + 0.3*sin(u2))/sqrt(2)",
                               "cos(u2 + 0.3*sin(u1))/sqrt(2)", "sin(u2 + 0.3*sin(u1))/sqrt(2)", "0"});
  const IntegrabilityResiduals r = integrability_residuals(*sheared, u, 1e-3);
  CHECK(r.equa[3] <= 1e-5);
  CHECK(r.max() > 1e-9);
}
