#pragma once

// Conformal Gauss map Xi = span{xi_1..xi_p} into Gr(p, R^{m+p+2}_1) and
// finite-difference certificates for its rank, the submersion factor,
// harmonicity and super-conformality.
//
// Grassmann tangent vectors at Xi are maps Xi -> Xi^perp, stored as the
// (m+p+2) x p matrix of images of the frame vectors. The metric is the
// trace pairing with the Lorentz metric.

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "wintgen/chart.hpp"
#include "wintgen/tolerances.hpp"

namespace wintgen {

struct GrassmannPoint {
  Eigen::MatrixXd frame;  // columns: Lorentz-orthonormal spacelike vectors

  // Largest principal angle to another point; frames do not matter.
  double distance(const GrassmannPoint& other) const;
};

GrassmannPoint gauss_map(const Chart& chart, std::span<const double> u, const Tolerances& tol = default_tolerances());

struct EllipseData {
  // Lorentz trace-pairing squares and products of the normal components
  // II_N(E1,E1), II_N(E2,E2), II_N(E1,E2) and D = (II_N(E1,E1) - II_N(E2,E2))/2.
  double n11 = 0.0;
  double n22 = 0.0;
  double n12 = 0.0;
  double d_sq = 0.0;
  double d_dot_12 = 0.0;
  double circle_residual = 0.0;  // max(|<D,D> - <II12,II12>|, |<D,II12>|)
};

struct CertificateOptions {
  // Replaces xi_2 by xi_2 + shift * Y, a sphere congruence through the
  // point that is not the mean curvature sphere.
  double control_shift = 0.0;
  // Rotates the canonical E_1, E_2 by this angle before differencing.
  double gauge_angle = 0.0;
};

struct GaussMapCertificate {
  std::vector<double> u;
  double h = 0.0;
  bool canonical_frame = false;  // false: B has no Wintgen pattern, E_i are the coordinate Gram-Schmidt frame
  std::vector<double> singular_values;  // descending, one per tangent direction
  double submersion_ratio = 0.0;        // (sigma_1^2 + sigma_2^2) / 4
  double submersion_residual = 0.0;     // pullback metric against 2 (w1^2 + w2^2)
  double min_gram_eigenvalue = 0.0;     // positivity of the trace pairing on dXi
  double tension_norm = 0.0;            // Euclidean norm of II_N(E1,E1) + II_N(E2,E2)
  EllipseData ellipse;
  double fiber_angle = 0.0;             // largest change of Xi one step along E_3..E_m
  int rank(double threshold) const;
};

// E_1, E_2 are the canonical directions from the Wintgen pattern of B at u.
// Without that pattern only the singular values are meaningful.
GaussMapCertificate gauss_map_certificate(const Chart& chart, std::span<const double> u, double h,
                                          const CertificateOptions& opts = {});

std::vector<double> rank_certificate(const Chart& chart, std::span<const double> u, double h);
double harmonicity_certificate(const Chart& chart, std::span<const double> u, double h);
EllipseData superconformality_certificate(const Chart& chart, std::span<const double> u, double h);

struct ConvergenceStudy {
  std::vector<GaussMapCertificate> runs;  // one per step, in the given order
  std::vector<double> tension_ratios;     // run[k] / run[k+1]
  std::vector<double> circle_ratios;
  std::vector<double> tension_orders;     // log2 of the ratios
  std::vector<double> circle_orders;
};

ConvergenceStudy convergence_study(const Chart& chart, std::span<const double> u, std::span<const double> steps,
                                   const CertificateOptions& opts = {});

}  // namespace wintgen
