#include "wintgen/ddvv.hpp"

#include <cmath>

#include "wintgen/errors.hpp"

namespace wintgen {

double ddvv_deficit(const PointGeometry& pg, double c) {
  const ScalarCurvatures sc = scalar_curvatures(pg, c);
  return c + pg.H_sq() - sc.K_N - sc.K;
}

DdvvReport ddvv_report(const PointGeometry& pg, double c, const Tolerances& tol) {
  DdvvReport r;
  r.u = pg.u;
  const ScalarCurvatures sc = scalar_curvatures(pg, c);
  r.K = sc.K;
  r.K_N = sc.K_N;
  r.c = c;
  r.H_sq = pg.H_sq();
  r.deficit = c + r.H_sq - r.K_N - r.K;
  r.rho_sq = 0.25 * pg.traceless_norm_sq();
  r.umbilic = r.rho_sq < tol.umbilic;
  if (!r.umbilic && r.deficit <= tol.ddvv) {
    try {
      r.canonical_fit = fit_canonical_frames(pg, 1e3 * tol.ddvv);
    } catch (const Error&) {
      r.canonical_fit.reset();
    }
  }
  return r;
}

WintgenVerdict wintgen_verdict(const DdvvReport& report, double tol) {
  if (report.umbilic) return {false, "umbilic"};
  if (report.deficit > tol) return {false, "deficit"};
  return {true, ""};
}

std::vector<Eigen::MatrixXd> wintgen_pattern(int m, int p, double l1, double l2, double l3, double mu0) {
  std::vector<Eigen::MatrixXd> out(static_cast<std::size_t>(p), Eigen::MatrixXd::Zero(m, m));
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(m, m);
  if (p >= 1) {
    out[0] = l1 * id;
    out[0](0, 1) = out[0](1, 0) = mu0;
  }
  if (p >= 2) {
    out[1] = l2 * id;
    out[1](0, 0) += mu0;
    out[1](1, 1) -= mu0;
  }
  if (p >= 3) out[2] = l3 * id;
  return out;
}

namespace {

// Extends orthonormal columns to an orthonormal basis of R^n, taking the
// projections of the reference columns (from index `first_ref`) first and
// coordinate axes by largest remaining norm afterwards.
Eigen::MatrixXd complete_basis(const Eigen::MatrixXd& partial, const Eigen::MatrixXd* ref, int first_ref) {
  const Eigen::Index n = partial.rows();
  Eigen::MatrixXd q = partial;
  auto residual = [&](Eigen::VectorXd v) {
    for (int pass = 0; pass < 2; ++pass) v -= q * (q.transpose() * v);
    return v;
  };
  auto push = [&](const Eigen::VectorXd& v) {
    q.conservativeResize(n, q.cols() + 1);
    q.col(q.cols() - 1) = v.normalized();
  };
  if (ref) {
    for (Eigen::Index j = first_ref; j < ref->cols() && q.cols() < n; ++j) {
      Eigen::VectorXd r = residual(ref->col(j));
      if (r.norm() > 1e-6) {
        if (r.dot(ref->col(j)) < 0) r = -r;
        push(r);
      }
    }
  }
  while (q.cols() < n) {
    Eigen::VectorXd best;
    double best_norm = -1.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      const Eigen::VectorXd r = residual(Eigen::VectorXd::Unit(n, j));
      if (r.norm() > best_norm + 1e-12) {
        best_norm = r.norm();
        best = r;
      }
    }
    push(best);
  }
  return q;
}

}  // namespace

CanonicalFit fit_canonical_frames(const std::vector<Eigen::MatrixXd>& ops, double tol, const ReferenceFrames* reference) {
  const int p = static_cast<int>(ops.size());
  if (p == 0) throw StructuralError("canonical fit needs at least one shape operator");
  const int m = static_cast<int>(ops[0].rows());
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(m, m);

  Eigen::VectorXd h(p);
  std::vector<Eigen::MatrixXd> t;
  Eigen::MatrixXd coef(p, m * m);
  double scale = 0.0;
  for (int r = 0; r < p; ++r) {
    const Eigen::MatrixXd& a = ops[static_cast<std::size_t>(r)];
    if (a.rows() != m || a.cols() != m) throw StructuralError("shape operators must be square of equal size");
    h(r) = a.trace() / m;
    t.push_back(a - h(r) * id);
    coef.row(r) = Eigen::Map<const Eigen::RowVectorXd>(t.back().data(), m * m);
    scale = std::max(scale, a.cwiseAbs().maxCoeff());
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(coef, Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();
  if (sv(0) <= 1e-12 * std::max(1.0, scale)) {
    throw DegeneracyError("traceless shape operators vanish: the span W is 0-dimensional");
  }

  // D2 is the range of the two dominant traceless operators.
  Eigen::MatrixXd range_op = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index k = 0; k < std::min<Eigen::Index>(2, sv.size()); ++k) {
    const Eigen::MatrixXd s = Eigen::Map<const Eigen::MatrixXd>(svd.matrixV().col(k).data(), m, m);
    range_op += s * s;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(range_op);
  const Eigen::MatrixXd d2 = eig.eigenvectors().rightCols(2);

  Eigen::VectorXd e1;
  if (reference) {
    e1 = d2 * (d2.transpose() * reference->tangent.col(0));
  } else {
    double best = -1.0;
    for (int k = 0; k < m; ++k) {
      const Eigen::VectorXd v = d2 * d2.row(k).transpose();
      if (v.norm() > best + 1e-12) {
        best = v.norm();
        e1 = v;
      }
    }
  }
  if (e1.norm() < 1e-8) throw FitError("reference direction is orthogonal to the canonical distribution", 1.0);
  e1.normalize();
  const Eigen::VectorXd c0 = d2.col(0) - d2.col(0).dot(e1) * e1;
  const Eigen::VectorXd c1 = d2.col(1) - d2.col(1).dot(e1) * e1;
  Eigen::VectorXd e2 = (c0.norm() > c1.norm() ? c0 : c1).normalized();
  if (reference && reference->tangent.cols() > 1) {
    if (e2.dot(reference->tangent.col(1)) < 0) e2 = -e2;
  } else {
    Eigen::Index k;
    e2.cwiseAbs().maxCoeff(&k);
    if (e2(k) < 0) e2 = -e2;
  }

  Eigen::VectorXd a(p), b(p);
  for (int r = 0; r < p; ++r) {
    a(r) = e1.dot(t[static_cast<std::size_t>(r)] * e1);
    b(r) = e1.dot(t[static_cast<std::size_t>(r)] * e2);
  }
  if (p < 2 || a.norm() < 1e-12 * sv(0) || b.norm() < 1e-12 * sv(0)) {
    throw FitError("traceless shape operators do not span a 2-dimensional Wintgen pair", sv(0));
  }
  Eigen::MatrixXd nframe(p, 2);
  nframe.col(1) = a.normalized();
  Eigen::VectorXd n1 = b - b.dot(nframe.col(1)) * nframe.col(1);
  if (n1.norm() < 1e-12 * b.norm()) throw FitError("normal pair is degenerate", sv(0));
  nframe.col(0) = n1.normalized();
  if (p >= 3) {
    Eigen::VectorXd hp = h - nframe * (nframe.transpose() * h);
    if (hp.norm() > 1e-12 * std::max(1.0, h.norm())) {
      nframe.conservativeResize(p, 3);
      nframe.col(2) = hp.normalized();
      if (reference && reference->normal.cols() > 2 && nframe.col(2).dot(reference->normal.col(2)) < 0)
        nframe.col(2) = -nframe.col(2);
    }
  }
  const Eigen::MatrixXd* nref = reference && reference->normal.size() > 0 ? &reference->normal : nullptr;
  const Eigen::MatrixXd normal = complete_basis(nframe, nref, static_cast<int>(nframe.cols()));

  Eigen::MatrixXd tframe(m, 2);
  tframe.col(0) = e1;
  tframe.col(1) = e2;
  const Eigen::MatrixXd* tref = reference && reference->tangent.size() > 0 ? &reference->tangent : nullptr;
  const Eigen::MatrixXd tangent = complete_basis(tframe, tref, 2);

  CanonicalFit fit;
  fit.tangent = tangent;
  fit.normal = normal;
  fit.mu0 = 0.5 * (a.norm() + b.norm());
  std::vector<Eigen::MatrixXd> rotated(static_cast<std::size_t>(p), Eigen::MatrixXd::Zero(m, m));
  for (int s = 0; s < p; ++s) {
    for (int r = 0; r < p; ++r) rotated[static_cast<std::size_t>(s)] += normal(r, s) * ops[static_cast<std::size_t>(r)];
    rotated[static_cast<std::size_t>(s)] = tangent.transpose() * rotated[static_cast<std::size_t>(s)] * tangent;
  }
  fit.lambda1 = rotated[0].trace() / m;
  fit.lambda2 = rotated[1].trace() / m;
  fit.lambda3 = p >= 3 ? rotated[2].trace() / m : 0.0;
  const auto pattern = wintgen_pattern(m, p, fit.lambda1, fit.lambda2, fit.lambda3, fit.mu0);
  for (int s = 0; s < p; ++s) {
    fit.residual = std::max(fit.residual,
                            (rotated[static_cast<std::size_t>(s)] - pattern[static_cast<std::size_t>(s)]).cwiseAbs().maxCoeff());
  }
  if (!(fit.residual <= tol)) throw FitError("shape operators do not match the Wintgen pattern", fit.residual);
  return fit;
}

CanonicalFit fit_canonical_frames(const PointGeometry& pg, double tol) { return fit_canonical_frames(pg.II, tol); }

}  // namespace wintgen
