#include "wintgen/conformal_gauss.hpp"

#include <algorithm>
#include <cmath>

#include "wintgen/ddvv.hpp"
#include "wintgen/errors.hpp"
#include "wintgen/lorentz.hpp"
#include "wintgen/moebius_frame.hpp"

namespace wintgen {

double GrassmannPoint::distance(const GrassmannPoint& other) const { return max_principal_angle(frame, other.frame); }

int GaussMapCertificate::rank(double threshold) const {
  return static_cast<int>(std::count_if(singular_values.begin(), singular_values.end(), [&](double s) { return s > threshold; }));
}

namespace {

Eigen::MatrixXd xi_matrix(const MoebiusFrame& fr, double shift) {
  Eigen::MatrixXd q(fr.Y.size(), fr.p);
  for (int r = 0; r < fr.p; ++r) q.col(r) = fr.xi[static_cast<std::size_t>(r)];
  if (shift != 0.0 && fr.p >= 2) q.col(1) += shift * fr.Y;
  return q;
}

// Lorentz trace pairing of two Grassmann tangent representatives.
double pairing(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return (a.transpose() * lorentz_metric(static_cast<int>(a.rows())) * b).trace();
}

Eigen::MatrixXd perp(const Eigen::MatrixXd& xi0, const Eigen::MatrixXd& v) {
  return v - xi0 * (xi0.transpose() * lorentz_metric(static_cast<int>(xi0.rows())) * v);
}

struct LineSample {
  Eigen::MatrixXd first;   // P_perp D xi, per frame vector
  Eigen::MatrixXd accel;   // covariant second derivative
};

}  // namespace

GrassmannPoint gauss_map(const Chart& chart, std::span<const double> u, const Tolerances& tol) {
  const MoebiusFrame fr = build_frame(chart, u, nullptr, tol);
  return {xi_matrix(fr, 0.0)};
}

GaussMapCertificate gauss_map_certificate(const Chart& chart, std::span<const double> u, double h,
                                          const CertificateOptions& opts) {
  const int m = chart.dim_m();
  const MoebiusFrame c = build_frame(chart, u);
  GaussMapCertificate cert;
  Eigen::MatrixXd R = Eigen::MatrixXd::Identity(m, m);
  try {
    R = fit_canonical_frames(c.B, 1e-6).tangent;
    cert.canonical_frame = true;
  } catch (const FitError&) {
    cert.canonical_frame = false;
  }
  if (opts.gauge_angle != 0.0) {
    const double ct = std::cos(opts.gauge_angle), st = std::sin(opts.gauge_angle);
    const Eigen::VectorXd e1 = R.col(0), e2 = R.col(1);
    R.col(0) = ct * e1 + st * e2;
    R.col(1) = -st * e1 + ct * e2;
  }
  // coordinate directions of the canonical E'_i
  const Eigen::MatrixXd dirs = c.P.transpose() * R;
  const Eigen::MatrixXd xi0 = xi_matrix(c, opts.control_shift);
  const Box& box = chart.domain();

  auto frame_at = [&](const Eigen::VectorXd& step) {
    std::vector<double> v(u.begin(), u.end());
    for (int a = 0; a < m; ++a) v[static_cast<std::size_t>(a)] += step(a);
    if (!box.contains(v)) throw DomainError("certificate stencil leaves the chart domain", h);
    const Eigen::MatrixXd q = xi_matrix(build_frame(chart, v, &c.gauge), opts.control_shift);
    return Eigen::MatrixXd(q * procrustes_rotation(q, xi0));
  };
  auto line = [&](const Eigen::VectorXd& w) {
    const Eigen::MatrixXd qp = frame_at(h * w), qm = frame_at(-h * w);
    const Eigen::MatrixXd d1 = (qp - qm) / (2.0 * h);
    const Eigen::MatrixXd d2 = (qp - 2.0 * xi0 + qm) / (h * h);
    LineSample s;
    s.first = perp(xi0, d1);
    // a(r, s) = <D xi_r, xi_s>; the acceleration in Gr is P_perp D^2 xi - 2 X a
    const Eigen::MatrixXd a = d1.transpose() * lorentz_metric(static_cast<int>(xi0.rows())) * xi0;
    s.accel = perp(xi0, d2) - 2.0 * s.first * a.transpose();
    return s;
  };

  cert.u.assign(u.begin(), u.end());
  cert.h = h;
  std::vector<LineSample> axes;
  for (int i = 0; i < m; ++i) axes.push_back(line(dirs.col(i)));
  Eigen::MatrixXd gram(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) gram(i, j) = pairing(axes[static_cast<std::size_t>(i)].first, axes[static_cast<std::size_t>(j)].first);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eg(gram);
  cert.min_gram_eigenvalue = eg.eigenvalues().minCoeff();
  if (cert.min_gram_eigenvalue < -1e-6 * std::max(1.0, eg.eigenvalues().maxCoeff()))
    throw GeometryError("trace pairing is not positive on the Gauss map differential");
  for (Eigen::Index k = m - 1; k >= 0; --k) cert.singular_values.push_back(std::sqrt(std::max(0.0, eg.eigenvalues()(k))));
  cert.submersion_ratio = (gram(0, 0) + gram(1, 1)) / 4.0;
  Eigen::MatrixXd target = Eigen::MatrixXd::Zero(m, m);
  target(0, 0) = target(1, 1) = 2.0;
  cert.submersion_residual = (gram - target).cwiseAbs().maxCoeff();

  // normal components relative to the image tangent plane span{X^1, X^2}
  const Eigen::Matrix2d g2 = gram.topLeftCorner(2, 2);
  const Eigen::Matrix2d g2inv = g2.inverse();
  auto normal_part = [&](const Eigen::MatrixXd& acc) {
    const Eigen::Vector2d b(pairing(axes[0].first, acc), pairing(axes[1].first, acc));
    const Eigen::Vector2d coef = g2inv * b;
    return Eigen::MatrixXd(acc - coef(0) * axes[0].first - coef(1) * axes[1].first);
  };
  const Eigen::MatrixXd n11 = normal_part(axes[0].accel);
  const Eigen::MatrixXd n22 = normal_part(axes[1].accel);
  const Eigen::MatrixXd npp = normal_part(line(dirs.col(0) + dirs.col(1)).accel);
  const Eigen::MatrixXd nmm = normal_part(line(dirs.col(0) - dirs.col(1)).accel);
  const Eigen::MatrixXd n12 = (npp - nmm) / 4.0;
  cert.tension_norm = (n11 + n22).norm();
  const Eigen::MatrixXd dd = (n11 - n22) / 2.0;
  EllipseData& e = cert.ellipse;
  e.n11 = pairing(n11, n11);
  e.n22 = pairing(n22, n22);
  e.n12 = pairing(n12, n12);
  e.d_sq = pairing(dd, dd);
  e.d_dot_12 = pairing(dd, n12);
  e.circle_residual = std::max(std::abs(e.d_sq - e.n12), std::abs(e.d_dot_12));

  for (int a = 2; a < m; ++a) {
    const Eigen::MatrixXd q = frame_at(h * dirs.col(a));
    cert.fiber_angle = std::max(cert.fiber_angle, max_principal_angle(xi0, q));
  }
  return cert;
}

std::vector<double> rank_certificate(const Chart& chart, std::span<const double> u, double h) {
  return gauss_map_certificate(chart, u, h).singular_values;
}

double harmonicity_certificate(const Chart& chart, std::span<const double> u, double h) {
  return gauss_map_certificate(chart, u, h).tension_norm;
}

EllipseData superconformality_certificate(const Chart& chart, std::span<const double> u, double h) {
  return gauss_map_certificate(chart, u, h).ellipse;
}

ConvergenceStudy convergence_study(const Chart& chart, std::span<const double> u, std::span<const double> steps,
                                   const CertificateOptions& opts) {
  ConvergenceStudy out;
  for (double h : steps) out.runs.push_back(gauss_map_certificate(chart, u, h, opts));
  for (std::size_t k = 0; k + 1 < out.runs.size(); ++k) {
    const double tr = out.runs[k].tension_norm / out.runs[k + 1].tension_norm;
    const double cr = out.runs[k].ellipse.circle_residual / out.runs[k + 1].ellipse.circle_residual;
    const double halving = std::log2(out.runs[k].h / out.runs[k + 1].h);
    out.tension_ratios.push_back(tr);
    out.circle_ratios.push_back(cr);
    out.tension_orders.push_back(std::log2(tr) / halving);
    out.circle_orders.push_back(std::log2(cr) / halving);
  }
  return out;
}

}  // namespace wintgen
