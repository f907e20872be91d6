#pragma once

// DDVV deficit, the pointwise Wintgen ideal test, and the canonical frame
// in which the shape operators take the Wintgen pattern
//   A_1 = l1 I + mu0 [[0,1],[1,0]],  A_2 = l2 I + mu0 diag(1,-1,0..),
//   A_3 = l3 I,  A_s = 0 for s >= 4.

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "wintgen/surface_geometry.hpp"
#include "wintgen/tolerances.hpp"

namespace wintgen {

struct CanonicalFit {
  // Columns are the canonical e_i (resp. n_r) in the coordinates of the
  // input frames, so e_canonical = e_input * tangent.
  Eigen::MatrixXd tangent;
  Eigen::MatrixXd normal;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double lambda3 = 0.0;
  double mu0 = 0.0;
  double residual = 0.0;
};

struct DdvvReport {
  std::vector<double> u;
  double K = 0.0;
  double H_sq = 0.0;
  double K_N = 0.0;
  double c = 1.0;
  double deficit = 0.0;
  double rho_sq = 0.0;
  bool umbilic = false;
  std::optional<CanonicalFit> canonical_fit;
};

double ddvv_deficit(const PointGeometry& pg, double c = 1.0);

// Builds the report; attempts the canonical fit when the point is Wintgen
// ideal within tol.ddvv (fit failures leave canonical_fit empty).
DdvvReport ddvv_report(const PointGeometry& pg, double c = 1.0, const Tolerances& tol = default_tolerances());

struct WintgenVerdict {
  bool ideal = false;
  std::string reason;  // "umbilic", "deficit", or empty
};

WintgenVerdict wintgen_verdict(const DdvvReport& report, double tol);
inline bool is_wintgen_ideal(const DdvvReport& report, double tol) { return wintgen_verdict(report, tol).ideal; }

// Optional alignment targets: e_1, e_2 (and e_3.. in order) of a nearby
// canonical frame expressed in the input tangent frame, likewise for normals.
struct ReferenceFrames {
  Eigen::MatrixXd tangent;
  Eigen::MatrixXd normal;
};

// Fit the Wintgen pattern to symmetric shape operators given in orthonormal
// frames. DegeneracyError when the traceless operators vanish (mu0 -> 0),
// FitError when the pattern residual exceeds tol.
CanonicalFit fit_canonical_frames(const std::vector<Eigen::MatrixXd>& shape_operators, double tol,
                                  const ReferenceFrames* reference = nullptr);
CanonicalFit fit_canonical_frames(const PointGeometry& pg, double tol);

// The pattern operators for given parameters (m x m, p of them).
std::vector<Eigen::MatrixXd> wintgen_pattern(int m, int p, double l1, double l2, double l3, double mu0);

}  // namespace wintgen
