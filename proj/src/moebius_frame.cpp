#include "wintgen/moebius_frame.hpp"

#include <algorithm>
#include <cmath>

#include "wintgen/errors.hpp"
#include "wintgen/series_linalg.hpp"

namespace wintgen {

namespace {

using SV = RVecSeries;

std::size_t ix(int k) { return static_cast<std::size_t>(k); }

LorentzVec to_vec(const SV& v) {
  LorentzVec out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t k = 0; k < v.size(); ++k) out(static_cast<Eigen::Index>(k)) = v[k].value();
  return out;
}

SV unit_series(const RSeries& proto, int n, int k) {
  SV out(ix(n), RSeries(proto.layout(), 0.0, proto.order()));
  out[ix(k)] += 1.0;
  return out;
}

// Euclidean Gram-Schmidt step against the accepted vectors, two passes.
void push_orthonormal(std::vector<SV>& q, SV v) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& w : q) {
      const RSeries c = dot(v, w);
      axpy(v, -c, w);
    }
  }
  const RSeries nrm = sqrt(dot(v, v));
  if (nrm.value() < 1e-10) throw DegeneracyError("normal frame completion is rank deficient");
  q.push_back(scaled(v, reciprocal(nrm)));
}

}  // namespace

std::pair<LorentzVec, double> canonical_lift(const PointGeometry& pg, const Tolerances& tol) {
  const double rho_sq = 0.25 * pg.traceless_norm_sq();
  if (rho_sq < tol.umbilic) throw UmbilicError("umbilic point: the Moebius lift is undefined", rho_sq);
  const double rho = std::sqrt(rho_sq);
  LorentzVec y(pg.position.size() + 1);
  y(0) = rho;
  y.tail(pg.position.size()) = rho * pg.position;
  return {y, rho};
}

double MoebiusFrame::frame_defect() const {
  std::vector<LorentzVec> all{Y, N};
  for (const auto& v : Yj) all.push_back(v);
  for (const auto& v : xi) all.push_back(v);
  const std::size_t n = all.size();
  double worst = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a; b < n; ++b) {
      double expect = 0.0;
      if (a == 0 && b == 1) expect = 1.0;
      else if (a == b && a >= 2) expect = 1.0;
      worst = std::max(worst, std::abs(inner(all[a], all[b]) - expect));
    }
  }
  return worst;
}

double MoebiusFrame::B_norm_sq() const {
  double s = 0.0;
  for (const auto& b : B) s += b.squaredNorm();
  return s;
}

double MoebiusFrame::B_trace_defect() const {
  double worst = 0.0;
  for (const auto& b : B) worst = std::max(worst, std::abs(b.trace()));
  return worst;
}

MoebiusFrame build_frame(const Chart& chart, std::span<const double> u, const FrameGauge* gauge,
                         const Tolerances& tol) {
  const int m = chart.dim_m();
  const int p = chart.codim_p();
  const int n = m + p + 1;
  const SV f = chart.evaluate(u, 4);
  const RSeries& proto = f[0];

  std::vector<SV> fa;
  for (int a = 0; a < m; ++a) fa.push_back(derivative(f, a));
  Mat<RSeries> G(ix(m), Vec<RSeries>(ix(m)));
  for (int a = 0; a < m; ++a)
    for (int b = a; b < m; ++b) G[ix(a)][ix(b)] = G[ix(b)][ix(a)] = dot(fa[ix(a)], fa[ix(b)]);

  MoebiusFrame fr;
  fr.u.assign(u.begin(), u.end());
  fr.m = m;
  fr.p = p;
  fr.position = to_vec(f);
  Eigen::MatrixXd df(n, m);
  for (int a = 0; a < m; ++a) df.col(a) = to_vec(fa[ix(a)]);
  {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(df);
    if (svd.singularValues()(m - 1) < tol.immersion * std::max(1.0, svd.singularValues()(0)))
      throw DegeneracyError("chart is not an immersion at this point");
  }
  if (gauge) {
    fr.gauge = *gauge;
  } else {
    Eigen::MatrixXd span(n, m + 1);
    span.col(0) = fr.position;
    span.rightCols(m) = df;
    fr.gauge.normal_pivots = completion_pivots(span, p);
  }

  std::vector<SV> q;
  push_orthonormal(q, f);
  for (int a = 0; a < m; ++a) push_orthonormal(q, fa[ix(a)]);
  for (int r = 0; r < p; ++r) push_orthonormal(q, unit_series(proto, n, fr.gauge.normal_pivots[ix(r)]));
  std::vector<SV> nr(q.begin() + m + 1, q.end());

  const Mat<RSeries> Gi = inverse(G);
  std::vector<RSeries> Hs;
  RSeries rho_sq = RSeries(proto.layout(), 0.0, 2);
  fr.H.resize(p);
  fr.normals.resize(n, p);
  for (int r = 0; r < p; ++r) {
    Mat<RSeries> h(ix(m), Vec<RSeries>(ix(m)));
    for (int a = 0; a < m; ++a)
      for (int b = a; b < m; ++b) h[ix(a)][ix(b)] = h[ix(b)][ix(a)] = dot(derivative(fa[ix(a)], b), nr[ix(r)]);
    Mat<RSeries> S(ix(m), Vec<RSeries>(ix(m)));
    for (int a = 0; a < m; ++a) {
      for (int b = 0; b < m; ++b) {
        RSeries s = Gi[ix(a)][0] * h[0][ix(b)];
        for (int c = 1; c < m; ++c) s += Gi[ix(a)][ix(c)] * h[ix(c)][ix(b)];
        S[ix(a)][ix(b)] = s;
      }
    }
    RSeries tr = S[0][0];
    for (int a = 1; a < m; ++a) tr += S[ix(a)][ix(a)];
    RSeries tr2 = S[0][0] * S[0][0];
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        if (a || b) tr2 += S[ix(a)][ix(b)] * S[ix(b)][ix(a)];
    rho_sq += 0.25 * (tr2 - (tr * tr) / static_cast<double>(m));
    Hs.push_back(tr / static_cast<double>(m));
    fr.H(r) = Hs.back().value();
    fr.normals.col(r) = to_vec(nr[ix(r)]);
  }
  if (rho_sq.value() < tol.umbilic) throw UmbilicError("umbilic point: the Moebius lift is undefined", rho_sq.value());
  const RSeries rho = sqrt(rho_sq);
  fr.rho = rho.value();

  SV Y;
  Y.push_back(rho);
  for (int k = 0; k < n; ++k) Y.push_back(rho * f[ix(k)]);

  Mat<RSeries> g(ix(m), Vec<RSeries>(ix(m)));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) g[ix(a)][ix(b)] = rho_sq * G[ix(a)][ix(b)];
  fr.metric.resize(m, m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) fr.metric(a, b) = g[ix(a)][ix(b)].value();

  // E_k = sum_a P[k][a] d_a, Gram-Schmidt in g.
  auto g_inner = [&](const Vec<RSeries>& x, const Vec<RSeries>& y) {
    RSeries s = zero_like(g[0][0]);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) s += x[ix(a)] * g[ix(a)][ix(b)] * y[ix(b)];
    return s;
  };
  Mat<RSeries> P;
  for (int k = 0; k < m; ++k) {
    Vec<RSeries> v(ix(m), RSeries(proto.layout(), 0.0, 2));
    v[ix(k)] += 1.0;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& w : P) {
        const RSeries c = g_inner(v, w);
        axpy(v, -c, w);
      }
    }
    const RSeries nrm = sqrt(g_inner(v, v));
    P.push_back(scaled(v, reciprocal(nrm)));
  }
  fr.P.resize(m, m);
  for (int k = 0; k < m; ++k)
    for (int a = 0; a < m; ++a) fr.P(k, a) = P[ix(k)][ix(a)].value();

  std::vector<SV> dY;
  for (int a = 0; a < m; ++a) dY.push_back(derivative(Y, a));
  std::vector<SV> Yk;
  for (int k = 0; k < m; ++k) {
    SV v = scaled(dY[0], P[ix(k)][0]);
    for (int a = 1; a < m; ++a) axpy(v, P[ix(k)][ix(a)], dY[ix(a)]);
    Yk.push_back(v);
  }

  const RSeries sqrt_det = sqrt(determinant(g));
  const Mat<RSeries> gi = inverse(g);
  SV lap;
  for (int a = 0; a < m; ++a) {
    SV w = scaled(dY[0], sqrt_det * gi[ix(a)][0]);
    for (int b = 1; b < m; ++b) axpy(w, sqrt_det * gi[ix(a)][ix(b)], dY[ix(b)]);
    const SV dw = derivative(w, a);
    if (lap.empty()) lap = dw;
    else
      for (std::size_t k = 0; k < lap.size(); ++k) lap[k] += dw[k];
  }
  LorentzVec dlap = to_vec(lap) / sqrt_det.value();
  fr.Y = to_vec(Y);
  fr.N = -dlap / m - inner(dlap, dlap) / (2.0 * m * m) * fr.Y;
  for (const auto& v : Yk) fr.Yj.push_back(to_vec(v));

  std::vector<SV> xis;
  for (int r = 0; r < p; ++r) {
    SV x;
    x.push_back(Hs[ix(r)]);
    for (int k = 0; k < n; ++k) x.push_back(nr[ix(r)][ix(k)] + Hs[ix(r)] * f[ix(k)]);
    fr.xi.push_back(to_vec(x));
    xis.push_back(std::move(x));
  }

  // Coordinate partials at the point.
  std::vector<std::vector<LorentzVec>> dxi_c(ix(m)), dYk_c(ix(m));
  fr.d2xi.assign(ix(m), std::vector<std::vector<LorentzVec>>(ix(m)));
  for (int a = 0; a < m; ++a) {
    for (int r = 0; r < p; ++r) {
      const SV d = derivative(xis[ix(r)], a);
      dxi_c[ix(a)].push_back(to_vec(d));
      for (int b = 0; b < m; ++b) fr.d2xi[ix(a)][ix(b)].push_back(to_vec(derivative(d, b)));
    }
    for (int i = 0; i < m; ++i) dYk_c[ix(a)].push_back(to_vec(derivative(Yk[ix(i)], a)));
  }
  fr.dY.assign(ix(m), {});
  fr.dxi.assign(ix(m), {});
  for (int k = 0; k < m; ++k) {
    for (int i = 0; i < m; ++i) {
      LorentzVec v = LorentzVec::Zero(n + 1);
      for (int a = 0; a < m; ++a) v += fr.P(k, a) * dYk_c[ix(a)][ix(i)];
      fr.dY[ix(k)].push_back(v);
    }
    for (int r = 0; r < p; ++r) {
      LorentzVec v = LorentzVec::Zero(n + 1);
      for (int a = 0; a < m; ++a) v += fr.P(k, a) * dxi_c[ix(a)][ix(r)];
      fr.dxi[ix(k)].push_back(v);
    }
  }

  fr.A.resize(m, m);
  fr.B.assign(ix(p), Eigen::MatrixXd(m, m));
  fr.C.resize(p, m);
  fr.omega.assign(ix(m), Eigen::MatrixXd(m, m));
  fr.theta.assign(ix(m), Eigen::MatrixXd(p, p));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const LorentzVec& ejyi = fr.dY[ix(j)][ix(i)];
      fr.A(i, j) = -inner(ejyi, fr.N);
      for (int r = 0; r < p; ++r) fr.B[ix(r)](i, j) = inner(ejyi, fr.xi[ix(r)]);
    }
  }
  for (int r = 0; r < p; ++r)
    for (int i = 0; i < m; ++i) fr.C(r, i) = -inner(fr.dxi[ix(i)][ix(r)], fr.N);
  for (int k = 0; k < m; ++k) {
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) fr.omega[ix(k)](i, j) = inner(fr.dY[ix(k)][ix(i)], fr.Yj[ix(j)]);
    for (int r = 0; r < p; ++r)
      for (int s = 0; s < p; ++s) fr.theta[ix(k)](r, s) = inner(fr.dxi[ix(k)][ix(r)], fr.xi[ix(s)]);
  }
  return fr;
}

namespace {

// 1-form components on coordinate vectors: out[b] = sum_k Pinv(b, k) forms[k].
std::vector<Eigen::MatrixXd> to_coordinates(const MoebiusFrame& fr, const std::vector<Eigen::MatrixXd>& forms) {
  const Eigen::MatrixXd pinv = fr.P.inverse();
  std::vector<Eigen::MatrixXd> out;
  for (int b = 0; b < fr.m; ++b) {
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(forms[0].rows(), forms[0].cols());
    for (int k = 0; k < fr.m; ++k) s += pinv(b, k) * forms[ix(k)];
    out.push_back(s);
  }
  return out;
}

// Curvature of a connection given by frame forms at the stencil:
// out[i * d + j](k, l) = -(d alpha - alpha ^ alpha)_ij (E_k, E_l).
std::vector<Eigen::MatrixXd> curvature(const FrameDerivatives& fd, bool normal) {
  const MoebiusFrame& c = fd.center;
  const int m = c.m;
  const int d = normal ? c.p : c.m;
  auto forms = [&](const MoebiusFrame& fr) { return to_coordinates(fr, normal ? fr.theta : fr.omega); };
  const auto at0 = normal ? c.theta : c.omega;
  std::vector<std::vector<Eigen::MatrixXd>> plus, minus;
  for (int a = 0; a < m; ++a) {
    plus.push_back(forms(fd.stencil[ix(a)]));
    minus.push_back(forms(fd.stencil[ix(m + a)]));
  }
  // dcoord[a][b] = d_a alpha(d_b)
  auto dcoord = [&](int a, int b) { return Eigen::MatrixXd((plus[ix(a)][ix(b)] - minus[ix(a)][ix(b)]) / (2.0 * fd.h)); };
  std::vector<Eigen::MatrixXd> out(ix(d * d), Eigen::MatrixXd::Zero(m, m));
  for (int k = 0; k < m; ++k) {
    for (int l = 0; l < m; ++l) {
      Eigen::MatrixXd dalpha = Eigen::MatrixXd::Zero(d, d);
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) dalpha += c.P(k, a) * c.P(l, b) * (dcoord(a, b) - dcoord(b, a));
      const Eigen::MatrixXd wedge = at0[ix(k)] * at0[ix(l)] - at0[ix(l)] * at0[ix(k)];
      const Eigen::MatrixXd omega2 = dalpha - wedge;
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) out[ix(i * d + j)](k, l) = -omega2(i, j);
    }
  }
  return out;
}

}  // namespace

FrameDerivatives frame_derivatives(const Chart& chart, std::span<const double> u, double h, const Tolerances& tol) {
  const int m = chart.dim_m();
  const int p = chart.codim_p();
  const Box& box = chart.domain();
  FrameDerivatives fd;
  fd.h = h;
  fd.center = build_frame(chart, u, nullptr, tol);
  const MoebiusFrame& c = fd.center;
  for (int sign : {1, -1}) {
    for (int a = 0; a < m; ++a) {
      std::vector<double> v(u.begin(), u.end());
      v[ix(a)] += sign * h;
      if (!box.contains(v)) throw DomainError("finite-difference stencil leaves the chart domain", h);
      fd.stencil.push_back(build_frame(chart, v, &c.gauge, tol));
    }
  }
  for (int a = 0; a < m; ++a) {
    const MoebiusFrame& fp = fd.stencil[ix(a)];
    const MoebiusFrame& fm = fd.stencil[ix(m + a)];
    fd.dA.push_back((fp.A - fm.A) / (2.0 * h));
    fd.dC.push_back((fp.C - fm.C) / (2.0 * h));
    std::vector<Eigen::MatrixXd> db;
    for (int r = 0; r < p; ++r) db.push_back((fp.B[ix(r)] - fm.B[ix(r)]) / (2.0 * h));
    fd.dB.push_back(db);
  }
  auto along = [&](const std::vector<Eigen::MatrixXd>& d, int k) {
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(d[0].rows(), d[0].cols());
    for (int a = 0; a < m; ++a) s += c.P(k, a) * d[ix(a)];
    return s;
  };
  for (int k = 0; k < m; ++k) {
    const Eigen::MatrixXd& w = c.omega[ix(k)];
    // A_ij,k = E_k A_ij + sum_l A_lj w_li + A_il w_lj
    fd.A_cov.push_back(along(fd.dA, k) + w.transpose() * c.A + c.A * w);
  }
  fd.B_cov.assign(ix(p), {});
  for (int r = 0; r < p; ++r) {
    std::vector<Eigen::MatrixXd> dbr;
    for (int a = 0; a < m; ++a) dbr.push_back(fd.dB[ix(a)][ix(r)]);
    for (int k = 0; k < m; ++k) {
      const Eigen::MatrixXd& w = c.omega[ix(k)];
      Eigen::MatrixXd b = along(dbr, k) + w.transpose() * c.B[ix(r)] + c.B[ix(r)] * w;
      for (int s = 0; s < p; ++s) b += c.theta[ix(k)](s, r) * c.B[ix(s)];
      fd.B_cov[ix(r)].push_back(b);
    }
  }
  for (int r = 0; r < p; ++r) {
    Eigen::MatrixXd cc(m, m);
    for (int j = 0; j < m; ++j) {
      const Eigen::MatrixXd ej = along(fd.dC, j);
      for (int i = 0; i < m; ++i) {
        double v = ej(r, i);
        for (int l = 0; l < m; ++l) v += c.C(r, l) * c.omega[ix(j)](l, i);
        for (int s = 0; s < p; ++s) v += c.C(s, i) * c.theta[ix(j)](s, r);
        cc(i, j) = v;
      }
    }
    fd.C_cov.push_back(cc);
  }
  fd.R = curvature(fd, false);
  fd.Rperp = curvature(fd, true);
  return fd;
}

double IntegrabilityResiduals::max() const { return *std::max_element(equa.begin(), equa.end()); }

IntegrabilityResiduals integrability_residuals(const FrameDerivatives& fd) {
  const MoebiusFrame& c = fd.center;
  const int m = c.m;
  const int p = c.p;
  auto delta = [](int a, int b) { return a == b ? 1.0 : 0.0; };
  IntegrabilityResiduals out;
  out.h = fd.h;
  auto bump = [&](int e, double v) { out.equa[ix(e)] = std::max(out.equa[ix(e)], std::abs(v)); };
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      for (int k = 0; k < m; ++k) {
        double rhs = 0.0;
        for (int r = 0; r < p; ++r) rhs += c.B[ix(r)](i, k) * c.C(r, j) - c.B[ix(r)](i, j) * c.C(r, k);
        bump(0, fd.A_cov[ix(k)](i, j) - fd.A_cov[ix(j)](i, k) - rhs);
        for (int r = 0; r < p; ++r) {
          const double lhs = fd.B_cov[ix(r)][ix(k)](i, j) - fd.B_cov[ix(r)][ix(j)](i, k);
          bump(2, lhs - (delta(i, j) * c.C(r, k) - delta(i, k) * c.C(r, j)));
        }
      }
      for (int r = 0; r < p; ++r) {
        double rhs = 0.0;
        for (int k = 0; k < m; ++k) rhs += c.B[ix(r)](i, k) * c.A(k, j) - c.B[ix(r)](j, k) * c.A(k, i);
        bump(1, fd.C_cov[ix(r)](i, j) - fd.C_cov[ix(r)](j, i) - rhs);
      }
      for (int k = 0; k < m; ++k) {
        for (int l = 0; l < m; ++l) {
          double rhs = delta(i, k) * c.A(j, l) + delta(j, l) * c.A(i, k) - delta(i, l) * c.A(j, k) - delta(j, k) * c.A(i, l);
          for (int r = 0; r < p; ++r)
            rhs += c.B[ix(r)](i, k) * c.B[ix(r)](j, l) - c.B[ix(r)](i, l) * c.B[ix(r)](j, k);
          bump(3, fd.R[ix(i * m + j)](k, l) - rhs);
        }
      }
    }
  }
  for (int r = 0; r < p; ++r) {
    for (int s = 0; s < p; ++s) {
      const Eigen::MatrixXd comm = c.B[ix(r)] * c.B[ix(s)] - c.B[ix(s)] * c.B[ix(r)];
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) bump(4, fd.Rperp[ix(r * p + s)](i, j) - comm(i, j));
    }
  }
  return out;
}

IntegrabilityResiduals integrability_residuals(const Chart& chart, std::span<const double> u, double h) {
  return integrability_residuals(frame_derivatives(chart, u, h));
}

}  // namespace wintgen

namespace wintgen {

namespace {

using CVec = Eigen::VectorXcd;

struct Canonical {
  Eigen::MatrixXd R;
  Eigen::MatrixXd Nr;
};

// Directional derivative along sum_c w_c E_c of a quantity sampled on the
// coordinate stencil (values[a] at u + h e_a, values[m + a] at u - h e_a).
Eigen::MatrixXd along(const FrameDerivatives& fd, const std::vector<Eigen::MatrixXd>& values, const Eigen::VectorXd& w) {
  const int m = fd.center.m;
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(values[0].rows(), values[0].cols());
  const Eigen::VectorXd coord = fd.center.P.transpose() * w;
  for (int a = 0; a < m; ++a) out += coord(a) * (values[ix(a)] - values[ix(m + a)]) / (2.0 * fd.h);
  return out;
}

}  // namespace

WintgenInvariants wintgen_invariants(const FrameDerivatives& fd, double fit_tol, double l_tol, bool require_eta3) {
  const MoebiusFrame& c = fd.center;
  const int m = c.m;
  const int p = c.p;
  if (p < 2) throw PreconditionError("Wintgen invariants need codimension at least 2");
  WintgenInvariants out;
  out.fit = fit_canonical_frames(c.B, fit_tol);
  const Eigen::MatrixXd R = out.fit.tangent;
  const Eigen::MatrixXd Nr = out.fit.normal;
  const ReferenceFrames ref{R, Nr};
  std::vector<Eigen::MatrixXd> Rs, Ns, Us, Vs;
  for (const auto& sf : fd.stencil) {
    const CanonicalFit f = fit_canonical_frames(sf.B, fit_tol, &ref);
    Rs.push_back(f.tangent);
    Ns.push_back(f.normal);
    const Eigen::MatrixXd cc = f.normal.transpose() * sf.C * f.tangent;
    Us.push_back(Eigen::MatrixXd::Constant(1, 1, cc(1, 1)));
    Vs.push_back(Eigen::MatrixXd::Constant(1, 1, cc(0, 1)));
  }

  // Tensors in the canonical frames.
  const Eigen::MatrixXd A = R.transpose() * c.A * R;
  const Eigen::MatrixXd C = Nr.transpose() * c.C * R;
  std::vector<Eigen::MatrixXd> Ccov(ix(p), Eigen::MatrixXd::Zero(m, m));
  for (int s = 0; s < p; ++s)
    for (int r = 0; r < p; ++r) Ccov[ix(s)] += Nr(r, s) * (R.transpose() * fd.C_cov[ix(r)] * R);
  // Bcov[s][k](i, j)
  std::vector<std::vector<Eigen::MatrixXd>> Bcov(ix(p), std::vector<Eigen::MatrixXd>(ix(m), Eigen::MatrixXd::Zero(m, m)));
  for (int s = 0; s < p; ++s)
    for (int k = 0; k < m; ++k)
      for (int r = 0; r < p; ++r)
        for (int cc = 0; cc < m; ++cc) Bcov[ix(s)][ix(k)] += Nr(r, s) * R(cc, k) * (R.transpose() * fd.B_cov[ix(r)][ix(cc)] * R);

  out.U = C(1, 1);
  out.V = C(0, 1);
  out.L_a = Eigen::VectorXd::Zero(std::max(0, m - 2));
  for (int a = 2; a < m; ++a) out.L_a(a - 2) = -Bcov[0][ix(a)](0, 0);
  out.S = Eigen::VectorXd::Zero(p - 2);
  out.T = Eigen::VectorXd::Zero(p - 2);
  for (int al = 2; al < p; ++al) {
    out.S(al - 2) = Bcov[ix(al)][1](0, 0);
    out.T(al - 2) = Bcov[ix(al)][0](0, 0);
  }
  out.L = out.L_a.size() > 0 ? out.L_a.norm() : 0.0;

  double mf = std::max(std::abs(C(0, 0) + out.U), std::abs(C(1, 0) - out.V));
  for (int i = 2; i < m; ++i) mf = std::max({mf, std::abs(C(0, i)), std::abs(C(1, i))});
  for (int al = 2; al < p; ++al)
    for (int i = 0; i < m; ++i) mf = std::max(mf, std::abs(C(al, i)));
  out.moebius_form_residual = mf;

  // Connection forms of the canonical frames on E'_k.
  std::vector<Eigen::MatrixXd> om(ix(m)), th(ix(m)), dR(ix(m)), dN(ix(m));
  for (int k = 0; k < m; ++k) {
    const Eigen::VectorXd w = R.col(k);
    dR[ix(k)] = along(fd, Rs, w);
    dN[ix(k)] = along(fd, Ns, w);
    Eigen::MatrixXd ok = Eigen::MatrixXd::Zero(m, m), tk = Eigen::MatrixXd::Zero(p, p);
    for (int cc = 0; cc < m; ++cc) {
      ok += w(cc) * c.omega[ix(cc)];
      tk += w(cc) * c.theta[ix(cc)];
    }
    om[ix(k)] = dR[ix(k)].transpose() * R + R.transpose() * ok * R;
    th[ix(k)] = dN[ix(k)].transpose() * Nr + Nr.transpose() * tk * Nr;
  }
  auto dl = [](int a, int b) { return a == b ? 1.0 : 0.0; };
  double cr = 0.0;
  for (int k = 0; k < m; ++k) {
    double rhs = -out.U * dl(k, 0) - out.V * dl(k, 1);
    for (int a = 2; a < m; ++a) {
      const double la = out.L_a(a - 2);
      rhs += la * dl(k, a);
      cr = std::max(cr, std::abs(om[ix(k)](0, a) - (la * dl(k, 1) - out.V * dl(k, a))));
      cr = std::max(cr, std::abs(om[ix(k)](1, a) - (-la * dl(k, 0) + out.U * dl(k, a))));
    }
    cr = std::max(cr, std::abs(2.0 * om[ix(k)](0, 1) + th[ix(k)](0, 1) - rhs));
    for (int al = 2; al < p; ++al) {
      const double s = out.S(al - 2), t = out.T(al - 2);
      cr = std::max(cr, std::abs(th[ix(k)](0, al) - (s * dl(k, 0) - t * dl(k, 1))));
      cr = std::max(cr, std::abs(th[ix(k)](1, al) - (t * dl(k, 0) + s * dl(k, 1))));
    }
  }
  out.connection_residual = cr;

  // Canonical frame vectors at the point.
  std::vector<LorentzVec> Yc(ix(m)), xic(ix(p));
  for (int i = 0; i < m; ++i) {
    Yc[ix(i)] = LorentzVec::Zero(c.Y.size());
    for (int a = 0; a < m; ++a) Yc[ix(i)] += R(a, i) * c.Yj[ix(a)];
  }
  for (int s = 0; s < p; ++s) {
    xic[ix(s)] = LorentzVec::Zero(c.Y.size());
    for (int r = 0; r < p; ++r) xic[ix(s)] += Nr(r, s) * c.xi[ix(r)];
  }
  out.eta1 = Yc[0] + out.V * c.Y;
  out.eta2 = Yc[1] - out.U * c.Y;
  out.eta_residual = std::max({std::abs(inner(out.eta1, out.eta1) - 1.0), std::abs(inner(out.eta2, out.eta2) - 1.0),
                               std::abs(inner(out.eta1, out.eta2)), std::abs(inner(out.eta1, c.Y)),
                               std::abs(inner(out.eta2, c.Y))});

  // E'_k applied to canonical vectors.
  auto d_xi = [&](int k, int s) {
    LorentzVec v = LorentzVec::Zero(c.Y.size());
    for (int r = 0; r < p; ++r) {
      v += dN[ix(k)](r, s) * c.xi[ix(r)];
      for (int cc = 0; cc < m; ++cc) v += Nr(r, s) * R(cc, k) * c.dxi[ix(cc)][ix(r)];
    }
    return v;
  };
  auto d_Y = [&](int k, int i) {
    LorentzVec v = LorentzVec::Zero(c.Y.size());
    for (int a = 0; a < m; ++a) {
      v += dR[ix(k)](a, i) * c.Yj[ix(a)];
      for (int cc = 0; cc < m; ++cc) v += R(a, i) * R(cc, k) * c.dY[ix(cc)][ix(a)];
    }
    return v;
  };
  const std::complex<double> I(0.0, 1.0);
  const CVec xi_c = xic[0].cast<std::complex<double>>() - I * xic[1].cast<std::complex<double>>();
  const CVec eta_c = out.eta1.cast<std::complex<double>>() + I * out.eta2.cast<std::complex<double>>();
  double sg = 0.0;
  for (int k = 0; k < m; ++k) {
    const CVec lhs = d_xi(k, 0).cast<std::complex<double>>() - I * d_xi(k, 1).cast<std::complex<double>>();
    const std::complex<double> w_plus = dl(k, 0) + I * dl(k, 1), w_minus = dl(k, 0) - I * dl(k, 1);
    CVec rhs = I * w_plus * eta_c + I * th[ix(k)](0, 1) * xi_c;
    for (int al = 2; al < p; ++al)
      rhs += w_minus * (out.S(al - 2) - I * out.T(al - 2)) * xic[ix(al)].cast<std::complex<double>>();
    sg = std::max(sg, (lhs - rhs).norm());
  }
  out.second_gauss_residual = sg;

  out.G = A(0, 1) - Ccov[0](1, 1);
  out.G_alt = 0.5 * (Ccov[0](0, 0) - Ccov[0](1, 1));
  out.has_eta3 = m >= 3 && out.L > l_tol;
  if (!out.has_eta3) {
    if (require_eta3) throw SingularInvariantError("L vanishes: eta3 and Ytilde are undefined");
    out.R = R;
    out.Nrot = Nr;
    return out;
  }
  // rotate E_3..E_m so that the first of them is along (L_a)
  const int q = m - 2;
  Eigen::MatrixXd Q = Eigen::HouseholderQR<Eigen::MatrixXd>(out.L_a).householderQ() * Eigen::MatrixXd::Identity(q, q);
  if (Q.col(0).dot(out.L_a) < 0) Q.col(0) = -Q.col(0);
  Eigen::MatrixXd block = Eigen::MatrixXd::Identity(m, m);
  block.bottomRightCorner(q, q) = Q;
  out.R = R * block;
  out.Nrot = Nr;
  LorentzVec Y3 = LorentzVec::Zero(c.Y.size());
  for (int a = 0; a < q; ++a) Y3 += Q(a, 0) * Yc[ix(2 + a)];
  const double gl = out.G / out.L;
  out.F = A(0, 0) - Ccov[0](0, 1) + 0.5 * (out.U * out.U + out.V * out.V - gl * gl);
  out.eta3 = Y3 - gl * c.Y;
  out.Ytilde = c.N - out.V * Yc[0] + out.U * Yc[1] + gl * Y3 - 0.5 * (out.U * out.U + out.V * out.V + gl * gl) * c.Y;

  // d(eta1 + i eta2) in terms of Ytilde, eta3 and xi
  const CVec bracket = (-out.Ytilde - out.F * c.Y).cast<std::complex<double>>() +
                       (gl - I * out.L) * out.eta3.cast<std::complex<double>>();
  double de = 0.0;
  for (int k = 0; k < m; ++k) {
    const Eigen::VectorXd w = R.col(k);
    const double dU = along(fd, Us, w)(0, 0), dV = along(fd, Vs, w)(0, 0);
    const LorentzVec de1 = d_Y(k, 0) + dV * c.Y + out.V * Yc[ix(k)];
    const LorentzVec de2 = d_Y(k, 1) - dU * c.Y - out.U * Yc[ix(k)];
    const double big_omega = inner(de1, out.eta2);
    const CVec lhs = de1.cast<std::complex<double>>() + I * de2.cast<std::complex<double>>();
    const std::complex<double> w_plus = dl(k, 0) + I * dl(k, 1), w_minus = dl(k, 0) - I * dl(k, 1);
    const CVec rhs = w_plus * bracket - I * big_omega * eta_c + I * w_minus * xi_c;
    de = std::max(de, (lhs - rhs).norm());
  }
  out.eta_derivative_residual = de;
  return out;
}

WintgenInvariants wintgen_invariants(const Chart& chart, std::span<const double> u, double h, double fit_tol) {
  return wintgen_invariants(frame_derivatives(chart, u, h), fit_tol);
}

}  // namespace wintgen
