#pragma once

// Metric invariants of f: U -> S^{m+p}: fundamental forms, mean curvature,
// normalized scalar curvature K and normal scalar curvature K_N.

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "wintgen/chart.hpp"

namespace wintgen {

struct PointGeometry {
  std::vector<double> u;
  int m = 0;
  int p = 0;
  Eigen::VectorXd position;        // f(u), unit vector
  Eigen::MatrixXd df;              // columns d_a f
  Eigen::MatrixXd metric;          // I = df^T df, coordinates
  Eigen::MatrixXd tangent_frame;   // columns e_i, orthonormal
  Eigen::MatrixXd normal_frame;    // columns n_r, orthonormal, normal to f and df
  std::vector<Eigen::MatrixXd> II; // h^r_ij in the e-frame
  Eigen::VectorXd H;               // H^r
  double K = 0.0;                  // with c = 1
  double K_N = 0.0;

  double H_sq() const { return H.squaredNorm(); }
  // |II - H I|^2 summed over r; rho^2 = this / 4.
  double traceless_norm_sq() const;
};

// Indices of the coordinate axes used to complete span(cols) to a basis by
// column-pivoted Gram-Schmidt. Deterministic for given inputs.
std::vector<int> completion_pivots(const Eigen::MatrixXd& cols, int count);

// Needs a jet of order >= 2. Normals are completed with `pivots` when given
// (count p), otherwise pivots are chosen at this point.
PointGeometry fundamental_forms(const Jet4& jet, int m, int p, const std::vector<int>* pivots = nullptr);
PointGeometry fundamental_forms(const Chart& chart, std::span<const double> u);

struct ScalarCurvatures {
  double K = 0.0;
  double K_N = 0.0;
};

// K by the Gauss equation with ambient curvature c; K_N from the Ricci
// equation with the root-sum-of-squares norm over i<j, r<s.
ScalarCurvatures scalar_curvatures(const PointGeometry& pg, double c = 1.0);

// Entries <R_perp(e_i,e_j) n_r, n_s> = <[A_r, A_s] e_i, e_j>.
double normal_curvature_norm(const std::vector<Eigen::MatrixXd>& shape_operators);

// Normalized scalar curvature of the induced metric from Christoffel
// symbols of the coordinate metric, independent of II.
double intrinsic_scalar_curvature(const Chart& chart, std::span<const double> u);

// Re-express pg in rotated frames: e' = e * qt, n' = n * qn.
PointGeometry regauge(const PointGeometry& pg, const Eigen::MatrixXd& qt, const Eigen::MatrixXd& qn);

}  // namespace wintgen
