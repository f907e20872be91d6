#pragma once

// Independent curvature oracle for tests: central differences of a plain
// closed-form map, normals from an SVD null space, K and K_N from the Gauss
// and Ricci equations. Shares no code with the library pipeline.

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <vector>

namespace oracle {

using Map = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

struct Curvatures {
  double K = 0.0;
  double K_N = 0.0;
  double H_sq = 0.0;
  double rho_sq = 0.0;
};

inline Eigen::VectorXd d1(const Map& f, Eigen::VectorXd u, int a, double h) {
  Eigen::VectorXd up = u, um = u, up2 = u, um2 = u;
  up(a) += h;
  um(a) -= h;
  up2(a) += 2 * h;
  um2(a) -= 2 * h;
  return (8.0 * (f(up) - f(um)) - (f(up2) - f(um2))) / (12.0 * h);
}

inline Eigen::VectorXd d2(const Map& f, const Eigen::VectorXd& u, int a, int b, double h) {
  if (a == b) {
    Eigen::VectorXd up = u, um = u, up2 = u, um2 = u;
    up(a) += h;
    um(a) -= h;
    up2(a) += 2 * h;
    um2(a) -= 2 * h;
    return (-f(up2) + 16.0 * f(up) - 30.0 * f(u) + 16.0 * f(um) - f(um2)) / (12.0 * h * h);
  }
  Map fa = [&](const Eigen::VectorXd& v) { return d1(f, v, a, h); };
  return d1(fa, u, b, h);
}

inline Curvatures curvatures(const Map& f, const Eigen::VectorXd& u, int p, double h = 1e-3) {
  const int m = static_cast<int>(u.size());
  const Eigen::VectorXd x = f(u);
  const int n = static_cast<int>(x.size());
  Eigen::MatrixXd df(n, m);
  for (int a = 0; a < m; ++a) df.col(a) = d1(f, u, a, h);
  Eigen::MatrixXd span(n, m + 1);
  span.col(0) = x;
  span.rightCols(m) = df;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(span.transpose(), Eigen::ComputeFullV);
  const Eigen::MatrixXd normals = svd.matrixV().rightCols(p);
  const Eigen::MatrixXd g = df.transpose() * df;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eg(g);
  const Eigen::MatrixXd ginv_half = eg.operatorInverseSqrt();
  std::vector<Eigen::MatrixXd> ops;
  Curvatures out;
  double traceless = 0.0;
  for (int r = 0; r < p; ++r) {
    Eigen::MatrixXd hh(m, m);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) hh(a, b) = d2(f, u, a, b, h).dot(normals.col(r));
    const Eigen::MatrixXd s = ginv_half * hh * ginv_half;
    ops.push_back(s);
    const double hr = s.trace() / m;
    out.H_sq += hr * hr;
    traceless += (s - hr * Eigen::MatrixXd::Identity(m, m)).squaredNorm();
  }
  double sum = 0.0;
  for (const auto& s : ops) sum += s.trace() * s.trace() - s.squaredNorm();
  out.K = 1.0 + sum / (m * (m - 1.0));
  double rn = 0.0;
  for (int r = 0; r < p; ++r)
    for (int t = r + 1; t < p; ++t) {
      const Eigen::MatrixXd c = ops[r] * ops[t] - ops[t] * ops[r];
      for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) rn += c(i, j) * c(i, j);
    }
  out.K_N = 2.0 / (m * (m - 1.0)) * std::sqrt(rn);
  out.rho_sq = 0.25 * traceless;
  return out;
}

// Closed-form maps used as ground truth.
inline Eigen::VectorXd veronese(const Eigen::VectorXd& u) {
  const double x = std::sin(u(0)) * std::cos(u(1)), y = std::sin(u(0)) * std::sin(u(1)), z = std::cos(u(0));
  const double s3 = std::sqrt(3.0);
  Eigen::VectorXd v(5);
  v << s3 * y * z, s3 * z * x, s3 * x * y, s3 / 2 * (x * x - y * y), (x * x + y * y - 2 * z * z) / 2;
  return v;
}

inline Eigen::VectorXd clifford_s4(const Eigen::VectorXd& u) {
  Eigen::VectorXd v(5);
  v << std::cos(u(0)), std::sin(u(0)), std::cos(u(1)), std::sin(u(1)), 0.0;
  return v / std::sqrt(2.0);
}

}  // namespace oracle
