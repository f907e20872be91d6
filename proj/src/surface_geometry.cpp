#include "wintgen/surface_geometry.hpp"

#include <cmath>

#include "wintgen/errors.hpp"
#include "wintgen/series_linalg.hpp"

namespace wintgen {

double PointGeometry::traceless_norm_sq() const {
  double s = 0.0;
  for (int r = 0; r < p; ++r) {
    const Eigen::MatrixXd t = II[static_cast<std::size_t>(r)] - H(r) * Eigen::MatrixXd::Identity(m, m);
    s += t.squaredNorm();
  }
  return s;
}

std::vector<int> completion_pivots(const Eigen::MatrixXd& cols, int count) {
  const Eigen::Index n = cols.rows();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(cols);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, cols.cols());
  std::vector<int> picks;
  for (int s = 0; s < count; ++s) {
    int best = -1;
    double best_norm = -1.0;
    Eigen::VectorXd best_r;
    for (Eigen::Index j = 0; j < n; ++j) {
      Eigen::VectorXd r = Eigen::VectorXd::Unit(n, j);
      r -= q * (q.transpose() * r);
      r -= q * (q.transpose() * r);
      if (r.norm() > best_norm + 1e-12) {
        best_norm = r.norm();
        best = static_cast<int>(j);
        best_r = r;
      }
    }
    if (best_norm < 1e-8) throw DegeneracyError("normal completion failed: tangent span is degenerate");
    picks.push_back(best);
    q.conservativeResize(n, q.cols() + 1);
    q.col(q.cols() - 1) = best_r.normalized();
  }
  return picks;
}

namespace {

// Euclidean Gram-Schmidt of the columns, twice for stability.
Eigen::MatrixXd gram_schmidt(const Eigen::MatrixXd& a) {
  Eigen::MatrixXd q = a;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index k = 0; k < j; ++k) q.col(j) -= q.col(k).dot(q.col(j)) * q.col(k);
    }
    const double nrm = q.col(j).norm();
    if (nrm < 1e-12) throw DegeneracyError("Gram-Schmidt on a rank deficient set");
    q.col(j) /= nrm;
  }
  return q;
}

}  // namespace

PointGeometry fundamental_forms(const Jet4& jet, int m, int p, const std::vector<int>* pivots) {
  if (jet.order() < 2) throw StructuralError("fundamental forms need a jet of order 2");
  const int n = m + p + 1;
  if (jet.components() != n) throw StructuralError("jet has the wrong number of components");
  PointGeometry pg;
  pg.u = jet.point();
  pg.m = m;
  pg.p = p;
  pg.position = jet.value();
  pg.df.resize(n, m);
  for (int a = 0; a < m; ++a) {
    const int v[] = {a};
    pg.df.col(a) = jet.derivative(v);
  }
  pg.metric = pg.df.transpose() * pg.df;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(pg.df);
  if (svd.singularValues()(m - 1) < 1e-7 * std::max(1.0, svd.singularValues()(0))) {
    throw DegeneracyError("chart is not an immersion at this point");
  }
  // tangent frame: e = df * Q, Q upper triangular from Gram-Schmidt
  pg.tangent_frame = gram_schmidt(pg.df);
  const Eigen::MatrixXd q = pg.df.completeOrthogonalDecomposition().pseudoInverse() * pg.tangent_frame;

  Eigen::MatrixXd span(n, m + 1);
  span.col(0) = pg.position;
  span.rightCols(m) = pg.df;
  const std::vector<int> piv = pivots ? *pivots : completion_pivots(span, p);
  Eigen::MatrixXd full(n, m + 1 + p);
  full.leftCols(m + 1) = span;
  for (int r = 0; r < p; ++r) full.col(m + 1 + r) = Eigen::VectorXd::Unit(n, piv[static_cast<std::size_t>(r)]);
  pg.normal_frame = gram_schmidt(full).rightCols(p);

  pg.H = Eigen::VectorXd::Zero(p);
  for (int r = 0; r < p; ++r) {
    Eigen::MatrixXd h(m, m);
    for (int a = 0; a < m; ++a) {
      for (int b = a; b < m; ++b) {
        const int v[] = {a, b};
        h(a, b) = h(b, a) = jet.derivative(v).dot(pg.normal_frame.col(r));
      }
    }
    pg.II.push_back(q.transpose() * h * q);
    pg.H(r) = pg.II.back().trace() / m;
  }
  const ScalarCurvatures sc = scalar_curvatures(pg, 1.0);
  pg.K = sc.K;
  pg.K_N = sc.K_N;
  return pg;
}

PointGeometry fundamental_forms(const Chart& chart, std::span<const double> u) {
  return fundamental_forms(eval_jet(chart, u, 2), chart.dim_m(), chart.codim_p());
}

double normal_curvature_norm(const std::vector<Eigen::MatrixXd>& ops) {
  double s = 0.0;
  for (std::size_t r = 0; r < ops.size(); ++r) {
    for (std::size_t t = r + 1; t < ops.size(); ++t) {
      const Eigen::MatrixXd c = ops[r] * ops[t] - ops[t] * ops[r];
      for (Eigen::Index i = 0; i < c.rows(); ++i)
        for (Eigen::Index j = i + 1; j < c.cols(); ++j) s += c(i, j) * c(i, j);
    }
  }
  return std::sqrt(s);
}

ScalarCurvatures scalar_curvatures(const PointGeometry& pg, double c) {
  const double m = pg.m;
  double sum = 0.0;
  for (const auto& h : pg.II) sum += h.trace() * h.trace() - h.squaredNorm();
  ScalarCurvatures out;
  out.K = c + sum / (m * (m - 1.0));
  out.K_N = 2.0 / (m * (m - 1.0)) * normal_curvature_norm(pg.II);
  return out;
}

double intrinsic_scalar_curvature(const Chart& chart, std::span<const double> u) {
  const int m = chart.dim_m();
  const RVecSeries f = chart.evaluate(u, 3);
  Mat<RSeries> g(static_cast<std::size_t>(m), Vec<RSeries>(static_cast<std::size_t>(m)));
  std::vector<RVecSeries> fa;
  for (int a = 0; a < m; ++a) fa.push_back(derivative(f, a));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) g[a][b] = dot(fa[a], fa[b]);
  const Mat<RSeries> gi = inverse(g);
  // Gamma^k_ij (order 1)
  auto idx = [](int x) { return static_cast<std::size_t>(x); };
  std::vector<Mat<RSeries>> gamma(idx(m), Mat<RSeries>(idx(m), Vec<RSeries>(idx(m))));
  for (int k = 0; k < m; ++k) {
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        RSeries s = zero_like(g[0][0]).truncated(1);
        for (int l = 0; l < m; ++l) {
          s += 0.5 * gi[idx(k)][idx(l)] *
               (g[idx(j)][idx(l)].derivative(i) + g[idx(i)][idx(l)].derivative(j) - g[idx(i)][idx(j)].derivative(l));
        }
        gamma[idx(k)][idx(i)][idx(j)] = s;
      }
    }
  }
  // Ricci_{bd} = R^a_{bad}, R^a_{bcd} = d_c G^a_{db} - d_d G^a_{cb} + G^a_{ce} G^e_{db} - G^a_{de} G^e_{cb}
  double scal = 0.0;
  for (int b = 0; b < m; ++b) {
    for (int d = 0; d < m; ++d) {
      double ric = 0.0;
      for (int a = 0; a < m; ++a) {
        const int c = a;
        double r = gamma[idx(a)][idx(d)][idx(b)].derivative(c).value() - gamma[idx(a)][idx(c)][idx(b)].derivative(d).value();
        for (int e = 0; e < m; ++e) {
          r += gamma[idx(a)][idx(c)][idx(e)].value() * gamma[idx(e)][idx(d)][idx(b)].value() -
               gamma[idx(a)][idx(d)][idx(e)].value() * gamma[idx(e)][idx(c)][idx(b)].value();
        }
        ric += r;
      }
      scal += gi[idx(b)][idx(d)].value() * ric;
    }
  }
  return scal / (m * (m - 1.0));
}

PointGeometry regauge(const PointGeometry& pg, const Eigen::MatrixXd& qt, const Eigen::MatrixXd& qn) {
  PointGeometry out = pg;
  out.tangent_frame = pg.tangent_frame * qt;
  out.normal_frame = pg.normal_frame * qn;
  for (int s = 0; s < pg.p; ++s) {
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(pg.m, pg.m);
    for (int r = 0; r < pg.p; ++r) h += qn(r, s) * pg.II[static_cast<std::size_t>(r)];
    out.II[static_cast<std::size_t>(s)] = qt.transpose() * h * qt;
  }
  out.H = qn.transpose() * pg.H;
  return out;
}

}  // namespace wintgen
