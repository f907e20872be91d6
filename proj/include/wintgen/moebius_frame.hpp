#pragma once

// Moebius invariants of an umbilic-free f: U -> S^{m+p}: the canonical lift
// Y = rho (1, f), the frame {Y, N, Y_j, xi_r} and the tensors A, B, C with
// the connection forms omega_ij and theta_rs.

#include <Eigen/Dense>
#include <array>
#include <span>
#include <utility>
#include <vector>

#include "wintgen/chart.hpp"
#include "wintgen/ddvv.hpp"
#include "wintgen/lorentz.hpp"
#include "wintgen/surface_geometry.hpp"

namespace wintgen {

// Choices that make frames smooth across nearby points: the coordinate
// axes that complete the Euclidean normal frame.
struct FrameGauge {
  std::vector<int> normal_pivots;
};

struct MoebiusFrame {
  std::vector<double> u;
  int m = 0;
  int p = 0;
  double rho = 0.0;
  Eigen::VectorXd position;
  Eigen::VectorXd H;         // Euclidean mean curvature components
  Eigen::MatrixXd normals;   // Euclidean normal frame n_r (columns)
  Eigen::MatrixXd P;         // E_k = sum_a P(k, a) d_a
  Eigen::MatrixXd metric;    // Moebius metric g in coordinates
  LorentzVec Y;
  LorentzVec N;
  std::vector<LorentzVec> Yj;
  std::vector<LorentzVec> xi;
  // dY[k][i] = E_k(Y_i), dxi[k][r] = E_k(xi_r), exact at the point.
  std::vector<std::vector<LorentzVec>> dY;
  std::vector<std::vector<LorentzVec>> dxi;
  // d2xi[a][b][r] = d_a d_b xi_r in coordinates.
  std::vector<std::vector<std::vector<LorentzVec>>> d2xi;
  Eigen::MatrixXd A;                // A(i, j)
  std::vector<Eigen::MatrixXd> B;   // B[r](i, j)
  Eigen::MatrixXd C;                // C(r, i)
  std::vector<Eigen::MatrixXd> omega;  // omega[k](i, j) = omega_ij(E_k)
  std::vector<Eigen::MatrixXd> theta;  // theta[k](r, s) = theta_rs(E_k)
  FrameGauge gauge;

  // max deviation of the frame Gram matrix from the pseudo-orthonormal one.
  double frame_defect() const;
  double B_norm_sq() const;
  double B_trace_defect() const;  // max_r |sum_j B^r_jj|
  double C_norm_sq() const { return C.squaredNorm(); }
};

// rho and Y = rho (1, f) from the Euclidean geometry at a point.
std::pair<LorentzVec, double> canonical_lift(const PointGeometry& pg, const Tolerances& tol = default_tolerances());

MoebiusFrame build_frame(const Chart& chart, std::span<const double> u, const FrameGauge* gauge = nullptr,
                         const Tolerances& tol = default_tolerances());

// Central-difference data around a point: the frame at u and at u +- h e_a
// in one smooth gauge, with covariant derivatives and curvatures.
struct FrameDerivatives {
  MoebiusFrame center;
  double h = 0.0;
  std::vector<Eigen::MatrixXd> A_cov;               // A_cov[k](i, j) = A_ij,k
  std::vector<std::vector<Eigen::MatrixXd>> B_cov;  // B_cov[r][k](i, j) = B^r_ij,k
  std::vector<Eigen::MatrixXd> C_cov;               // C_cov[r](i, j) = C^r_i,j
  // R[i * m + j](k, l) = R_ijkl, Rperp[r * p + s](i, j) = R^perp_rsij.
  std::vector<Eigen::MatrixXd> R;
  std::vector<Eigen::MatrixXd> Rperp;
  // Coordinate partials of the smooth-gauge tensors, d[a] for axis a.
  std::vector<Eigen::MatrixXd> dA;
  std::vector<std::vector<Eigen::MatrixXd>> dB;  // dB[a][r]
  std::vector<Eigen::MatrixXd> dC;
  // Frames at u + h e_a (first m) and u - h e_a (last m).
  std::vector<MoebiusFrame> stencil;
};

FrameDerivatives frame_derivatives(const Chart& chart, std::span<const double> u, double h,
                                   const Tolerances& tol = default_tolerances());

struct IntegrabilityResiduals {
  double h = 0.0;
  std::array<double, 5> equa{};  // max-abs residual of each condition
  double max() const;
};

IntegrabilityResiduals integrability_residuals(const FrameDerivatives& fd);
IntegrabilityResiduals integrability_residuals(const Chart& chart, std::span<const double> u, double h);

struct WintgenInvariants {
  double U = 0.0;
  double V = 0.0;
  double L = 0.0;
  Eigen::VectorXd L_a;  // a = 3..m before the rotation that isolates L
  Eigen::VectorXd S;    // alpha = 3..p
  Eigen::VectorXd T;
  LorentzVec eta1;
  LorentzVec eta2;
  bool has_eta3 = false;
  LorentzVec eta3;
  LorentzVec Ytilde;
  double F = 0.0;
  double G = 0.0;
  double G_alt = 0.0;  // second expression for G
  // Residuals of the structural identities.
  double connection_residual = 0.0;  // omega_1a, omega_2a, 2 omega_12 + theta_12, theta_1alpha, theta_2alpha
  double moebius_form_residual = 0.0;  // C^1_a, C^2_a, C^alpha_i and U, V consistency
  double second_gauss_residual = 0.0;  // d(xi_1 - i xi_2) identity
  double eta_residual = 0.0;  // pseudo-orthonormality of eta1, eta2 against Y, N
  double eta_derivative_residual = 0.0;  // d(eta1 + i eta2) identity, needs eta3
  CanonicalFit fit;
  // Canonical frames: E'_i = sum_a R(a, i) E_a, xi'_s = sum_r Nrot(r, s) xi_r.
  Eigen::MatrixXd R;
  Eigen::MatrixXd Nrot;
};

// L below l_tol leaves has_eta3 false; require_eta3 turns that into a
// SingularInvariantError.
WintgenInvariants wintgen_invariants(const FrameDerivatives& fd, double fit_tol = 1e-6, double l_tol = 1e-8,
                                     bool require_eta3 = false);
WintgenInvariants wintgen_invariants(const Chart& chart, std::span<const double> u, double h = 1e-3,
                                     double fit_tol = 1e-6);

}  // namespace wintgen
