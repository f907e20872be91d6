#include "wintgen/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wintgen/errors.hpp"
#include "wintgen/series_linalg.hpp"

namespace wintgen {

namespace {

using SV = RVecSeries;
using cd = std::complex<double>;
const cd I(0.0, 1.0);

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

double euclid_sq(const SV& v) {
  double s = 0.0;
  for (const auto& x : v) s += x.value() * x.value();
  return s;
}

Box box_from_json(const nlohmann::json& doc, int dims) {
  Box b;
  if (!doc.is_array() || static_cast<int>(doc.size()) != dims) throw StructuralError("domain must list [lo, hi] per axis");
  for (const auto& iv : doc) {
    if (!iv.is_array() || iv.size() != 2 || !iv[0].is_number() || !iv[1].is_number())
      throw StructuralError("domain interval must be [lo, hi]");
    const double lo = iv[0].get<double>(), hi = iv[1].get<double>();
    if (!(lo < hi)) throw StructuralError("domain interval is empty");
    b.lo.push_back(lo);
    b.hi.push_back(hi);
  }
  return b;
}

nlohmann::json box_to_json(const Box& b) {
  nlohmann::json out = nlohmann::json::array();
  for (int a = 0; a < b.dim(); ++a) out.push_back({b.lo[ix(a)], b.hi[ix(a)]});
  return out;
}

// Orthonormal basis of V = span{Re xi, Im xi, Re xi_z, Im xi_z} as series of
// order one less than x, y.
std::vector<SV> v_basis(const IsotropicCurve& curve, const RSeries& x, const RSeries& y) {
  const CVecSeries xi = curve.evaluate(x, y);
  const int lower = x.order() - 1;
  std::vector<SV> raw(4);
  for (const auto& c : xi) {
    const CSeries cz = (c.derivative(0) - c.derivative(1) * I) * cd(0.5);
    raw[0].push_back(real_part(c).truncated(lower));
    raw[1].push_back(imag_part(c).truncated(lower));
    raw[2].push_back(real_part(cz));
    raw[3].push_back(imag_part(cz));
  }
  std::vector<SV> q;
  for (auto v : raw) {
    const double scale = euclid_sq(v);
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& w : q) {
        const RSeries c = lorentz_inner(v, w);
        axpy(v, -c, w);
      }
    }
    const RSeries n2 = lorentz_inner(v, v);
    if (!(n2.value() > 1e-10 * std::max(scale, 1e-30)))
      throw GeometryError("sphere congruence is not spacelike of rank 4: the envelope degenerates");
    q.push_back(scaled(v, reciprocal(sqrt(n2))));
  }
  return q;
}

// Timelike unit e0' (projection of e_0) and spacelike completion of V^perp
// by the pivot axes.
std::pair<SV, std::vector<SV>> complement(const std::vector<SV>& q, const std::vector<int>& pivots) {
  const int n = static_cast<int>(q[0].size());
  const RSeries& proto = q[0][0];
  SV e0 = unit_series(proto, n, 0);
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& w : q) axpy(e0, -lorentz_inner(e0, w), w);
  const RSeries s = lorentz_inner(e0, e0);
  if (!(s.value() < 0)) throw GeometryError("complement of the sphere congruence is not Lorentzian");
  e0 = scaled(e0, reciprocal(sqrt(-s)));
  std::vector<SV> es;
  for (int piv : pivots) {
    SV v = unit_series(proto, n, piv);
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& w : q) axpy(v, -lorentz_inner(v, w), w);
      axpy(v, lorentz_inner(v, e0), e0);
      for (const auto& w : es) axpy(v, -lorentz_inner(v, w), w);
    }
    const RSeries n2 = lorentz_inner(v, v);
    if (!(n2.value() > 1e-8)) throw DegeneracyError("fiber frame completion is degenerate at this point");
    es.push_back(scaled(v, reciprocal(sqrt(n2))));
  }
  return {e0, es};
}

std::vector<int> choose_pivots(const Eigen::MatrixXd& q, const LorentzVec& e0, int count) {
  const int n = static_cast<int>(q.rows());
  std::vector<LorentzVec> basis;
  for (int k = 0; k < q.cols(); ++k) basis.push_back(q.col(k));
  std::vector<int> picks;
  for (int s = 0; s < count; ++s) {
    int best = -1;
    double best_n = -1.0;
    LorentzVec best_v;
    for (int j = 1; j < n; ++j) {
      if (std::find(picks.begin(), picks.end(), j) != picks.end()) continue;
      LorentzVec v = LorentzVec::Unit(n, j);
      for (int pass = 0; pass < 2; ++pass) {
        for (const auto& w : basis) v -= inner(v, w) * w;
        v += inner(v, e0) * e0;
      }
      const double nv = inner(v, v);
      if (nv > best_n + 1e-12) {
        best_n = nv;
        best = j;
        best_v = v;
      }
    }
    if (best_n < 1e-8) throw DegeneracyError("no spacelike completion of the fiber frame");
    picks.push_back(best);
    basis.push_back(best_v / std::sqrt(best_n));
  }
  return picks;
}

struct PointFrame {
  Eigen::MatrixXd V;
  LorentzVec e0;
  std::vector<LorentzVec> e;
};

PointFrame point_frame(const IsotropicCurve& curve, double x, double y, const std::vector<int>* pivots) {
  auto layout = MonomialLayout::get(2, 1);
  const RSeries xs = RSeries::variable(layout, 0, x), ys = RSeries::variable(layout, 1, y);
  const std::vector<SV> q = v_basis(curve, xs, ys);
  PointFrame pf;
  pf.V.resize(curve.target_dim(), 4);
  for (int k = 0; k < 4; ++k) pf.V.col(k) = to_vec(q[ix(k)]);
  std::vector<int> piv;
  if (pivots) {
    piv = *pivots;
  } else {
    const auto [e0, none] = complement(q, {});
    piv = choose_pivots(pf.V, to_vec(e0), curve.m() - 1);
  }
  const auto [e0, es] = complement(q, piv);
  pf.e0 = to_vec(e0);
  for (const auto& v : es) pf.e.push_back(to_vec(v));
  return pf;
}

}  // namespace

nlohmann::json WeierstrassSeed::to_json() const {
  return {{"name", name}, {"m", m}, {"domain", box_to_json(domain)}, {"components", components}};
}

WeierstrassSeed WeierstrassSeed::from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw StructuralError("seed document must be an object");
  if (!doc.contains("m") || !doc["m"].is_number_integer()) throw StructuralError("seed needs an integer m");
  if (!doc.contains("components") || !doc["components"].is_array()) throw StructuralError("seed needs components");
  WeierstrassSeed s;
  s.m = doc["m"].get<int>();
  if (s.m < 2) throw StructuralError("seed dimension m must be at least 2");
  s.name = doc.value("name", std::string("seed"));
  for (const auto& c : doc["components"]) {
    if (!c.is_string()) throw StructuralError("seed components must be strings");
    s.components.push_back(c.get<std::string>());
  }
  if (static_cast<int>(s.components.size()) != s.m + 2) throw StructuralError("seed needs m + 2 components");
  s.domain = doc.contains("domain") ? box_from_json(doc["domain"], 2) : Box{{-1, -1}, {1, 1}};
  return s;
}

IsotropicCurve::IsotropicCurve(std::string name, int m, Box domain, std::vector<std::string> components)
    : name_(std::move(name)), m_(m), domain_(std::move(domain)), sources_(std::move(components)) {
  if (m_ < 2) throw StructuralError("isotropic curve needs m >= 2");
  if (static_cast<int>(sources_.size()) != m_ + 4) throw StructuralError("isotropic curve needs m + 4 components");
  if (domain_.dim() != 2) throw StructuralError("isotropic curve domain is a box in (x, y)");
  for (const auto& s : sources_) exprs_.push_back(Expression::parse(s, {"z", "zbar"}, true));
}

CVecSeries IsotropicCurve::evaluate(const RSeries& x, const RSeries& y) const {
  const CSeries cx = complexify(x), cy = complexify(y);
  const CSeries vars[] = {cx + cy * I, cx - cy * I};
  auto make = [&](cd c) { return CSeries(x.layout(), c, x.order()); };
  CVecSeries out;
  for (const auto& e : exprs_) out.push_back(e.evaluate<CSeries>(std::span<const CSeries>(vars), make));
  return out;
}

Eigen::VectorXcd IsotropicCurve::value(double x, double y) const {
  const cd vars[] = {cd(x, y), cd(x, -y)};
  Eigen::VectorXcd out(target_dim());
  for (int k = 0; k < target_dim(); ++k) out(k) = exprs_[ix(k)].evaluate_complex(vars);
  return out;
}

std::pair<Eigen::VectorXcd, Eigen::VectorXcd> IsotropicCurve::jet1(double x, double y) const {
  auto layout = MonomialLayout::get(2, 1);
  const CVecSeries xi = evaluate(RSeries::variable(layout, 0, x), RSeries::variable(layout, 1, y));
  Eigen::VectorXcd v(target_dim()), vz(target_dim());
  for (int k = 0; k < target_dim(); ++k) {
    v(k) = xi[ix(k)].value();
    vz(k) = 0.5 * (xi[ix(k)].derivative(0).value() - I * xi[ix(k)].derivative(1).value());
  }
  return {v, vz};
}

nlohmann::json IsotropicCurve::to_json() const {
  return {{"name", name_}, {"m", m_}, {"domain", box_to_json(domain_)}, {"components", sources_}};
}

namespace {

cd bilinear(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  return -a(0) * b(0) + (a.tail(a.size() - 1).transpose() * b.tail(b.size() - 1))(0);
}

}  // namespace

IsotropicCurve curve_from_weierstrass(const WeierstrassSeed& seed, int samples_per_axis) {
  if (static_cast<int>(seed.components.size()) != seed.m + 2) throw StructuralError("seed needs m + 2 components");
  std::string q;
  for (const auto& w : seed.components) q += (q.empty() ? "" : " + ") + std::string("(") + w + ")^2";
  std::vector<std::string> comps;
  comps.push_back("(1 + " + q + ")/2");
  for (const auto& w : seed.components) comps.push_back(w);
  comps.push_back("(1 - (" + q + "))/2");
  IsotropicCurve curve(seed.name, seed.m, seed.domain, comps);

  std::vector<Expression> ws;
  for (const auto& w : seed.components) ws.push_back(Expression::parse(w, {"z", "zbar"}, true));
  const int counts[] = {samples_per_axis, samples_per_axis};
  auto layout = MonomialLayout::get(2, 1);
  for (const auto& pt : cell_grid(seed.domain, counts)) {
    const RSeries x = RSeries::variable(layout, 0, pt[0]), y = RSeries::variable(layout, 1, pt[1]);
    const CSeries cx = complexify(x), cy = complexify(y);
    const CSeries vars[] = {cx + cy * I, cx - cy * I};
    auto make = [&](cd c) { return CSeries(layout, c, 1); };
    cd wzwz = 0.0;
    double scale = 0.0;
    for (const auto& e : ws) {
      const CSeries w = e.evaluate<CSeries>(std::span<const CSeries>(vars), make);
      const cd wz = 0.5 * (w.derivative(0).value() - I * w.derivative(1).value());
      wzwz += wz * wz;
      scale += std::norm(wz);
    }
    if (std::abs(wzwz) > 1e-9 * std::max(1.0, scale))
      throw PreconditionError("Weierstrass data is not a null curve: W_z . W_z = " + std::to_string(std::abs(wzwz)));
    const Eigen::VectorXcd xi = curve.value(pt[0], pt[1]);
    if (!(bilinear(xi, xi.conjugate()).real() > 0))
      throw PreconditionError("curve leaves the quadric: <xi, conj xi> is not positive");
  }
  return curve;
}

bool IsotropyCertificate::ok(double tol) const {
  return null_residual <= tol && derivative_null_residual <= tol && holomorphic_residual <= tol && min_positivity > 0;
}

IsotropyCertificate validate_isotropic(const IsotropicCurve& curve, const std::vector<std::vector<double>>& grid) {
  IsotropyCertificate cert;
  cert.min_positivity = std::numeric_limits<double>::infinity();
  auto layout = MonomialLayout::get(2, 1);
  for (const auto& pt : grid) {
    const CVecSeries xi = curve.evaluate(RSeries::variable(layout, 0, pt[0]), RSeries::variable(layout, 1, pt[1]));
    const int n = curve.target_dim();
    Eigen::VectorXcd v(n), vz(n), vzb(n);
    for (int k = 0; k < n; ++k) {
      v(k) = xi[ix(k)].value();
      const cd dx = xi[ix(k)].derivative(0).value(), dy = xi[ix(k)].derivative(1).value();
      vz(k) = 0.5 * (dx - I * dy);
      vzb(k) = 0.5 * (dx + I * dy);
    }
    cert.null_residual = std::max(cert.null_residual, std::abs(bilinear(v, v)));
    cert.derivative_null_residual = std::max(cert.derivative_null_residual, std::abs(bilinear(vz, vz)));
    const cd along = v.dot(vzb) / v.squaredNorm();
    cert.holomorphic_residual = std::max(cert.holomorphic_residual, (vzb - along * v).norm() / v.norm());
    cert.min_positivity = std::min(cert.min_positivity, bilinear(v, v.conjugate()).real());
    ++cert.samples;
  }
  return cert;
}

Eigen::MatrixXd sphere_bundle_frame(const IsotropicCurve& curve, double x, double y) {
  auto layout = MonomialLayout::get(2, 1);
  const std::vector<SV> q = v_basis(curve, RSeries::variable(layout, 0, x), RSeries::variable(layout, 1, y));
  Eigen::MatrixXd out(curve.target_dim(), 4);
  for (int k = 0; k < 4; ++k) out.col(k) = to_vec(q[ix(k)]);
  return out;
}

Eigen::MatrixXd mean_curvature_plane(const IsotropicCurve& curve, double x, double y) {
  return sphere_bundle_frame(curve, x, y).leftCols(2);
}

std::vector<EnvelopeSample> build_envelope(const IsotropicCurve& curve, double x, double y, int fiber_samples) {
  const PointFrame pf = point_frame(curve, x, y, nullptr);
  std::vector<EnvelopeSample> out;
  for (const Eigen::VectorXd& s : sphere_grid(curve.m() - 1, fiber_samples)) {
    EnvelopeSample e;
    e.x = x;
    e.y = y;
    e.lambda = s;
    LorentzVec yh = pf.e0;
    for (int a = 0; a < s.size(); ++a) yh += s(a) * pf.e[ix(a)];
    e.Yhat = yh / yh(0);
    e.point = e.Yhat.tail(yh.size() - 1);
    e.V_frame = pf.V;
    double worst = std::abs(inner(e.Yhat, e.Yhat));
    for (int k = 0; k < 4; ++k) worst = std::max(worst, std::abs(inner(e.Yhat, pf.V.col(k))));
    if (worst > default_tolerances().null) throw GeometryError("envelope lift is not null and orthogonal to V");
    out.push_back(std::move(e));
  }
  return out;
}

EnvelopeChart::EnvelopeChart(std::shared_ptr<const IsotropicCurve> curve, int sheet)
    : EnvelopeChart(curve, {}, sheet) {}

EnvelopeChart::EnvelopeChart(std::shared_ptr<const IsotropicCurve> curve, std::vector<int> pivots, int sheet)
    : curve_(std::move(curve)), pivots_(std::move(pivots)), sheet_(sheet >= 0 ? 1 : -1) {
  const Box& base = curve_->domain();
  if (pivots_.empty()) {
    const std::vector<double> c = base.center();
    const auto layout = MonomialLayout::get(2, 1);
    const std::vector<SV> q = v_basis(*curve_, RSeries::variable(layout, 0, c[0]), RSeries::variable(layout, 1, c[1]));
    Eigen::MatrixXd v(curve_->target_dim(), 4);
    for (int k = 0; k < 4; ++k) v.col(k) = to_vec(q[ix(k)]);
    const auto [e0, none] = complement(q, {});
    pivots_ = choose_pivots(v, to_vec(e0), curve_->m() - 1);
  }
  if (static_cast<int>(pivots_.size()) != curve_->m() - 1) throw StructuralError("envelope chart needs m - 1 pivots");
  domain_ = base;
  const int k = curve_->m() - 2;
  for (int a = 0; a < k; ++a) {
    if (a + 1 < k) {
      domain_.lo.push_back(0.05);
      domain_.hi.push_back(M_PI - 0.05);
    } else {
      domain_.lo.push_back(-3.5);
      domain_.hi.push_back(3.5);
    }
  }
}

RVecSeries EnvelopeChart::evaluate(std::span<const double> u, int order) const {
  const int m = dim_m();
  if (static_cast<int>(u.size()) != m) throw StructuralError("envelope chart point has the wrong dimension");
  auto layout = MonomialLayout::get(m, order + 1);
  const RSeries x = RSeries::variable(layout, 0, u[0]), y = RSeries::variable(layout, 1, u[1]);
  const std::vector<SV> q = v_basis(*curve_, x, y);
  const auto [e0, es] = complement(q, pivots_);
  // point of S^{m-2}
  std::vector<RSeries> s;
  const int k = m - 2;
  if (k == 0) {
    s.push_back(RSeries(layout, static_cast<double>(sheet_), order));
  } else {
    RSeries prod(layout, 1.0, order + 1);
    for (int a = 0; a < k; ++a) {
      const RSeries ang = RSeries::variable(layout, 2 + a, u[ix(2 + a)]);
      s.push_back(prod * cos(ang));
      prod = prod * sin(ang);
    }
    s.push_back(prod);
  }
  SV yh = e0;
  for (std::size_t a = 0; a < s.size(); ++a) axpy(yh, s[a], es[a]);
  const RSeries inv0 = reciprocal(yh[0]);
  RVecSeries out;
  for (std::size_t c = 1; c < yh.size(); ++c) out.push_back((yh[c] * inv0).truncated(order));
  return out;
}

nlohmann::json EnvelopeChart::to_json() const {
  return {{"kind", "envelope"}, {"curve", curve_->to_json()}, {"pivots", pivots_}, {"sheet", sheet_}};
}

std::shared_ptr<EnvelopeChart> envelope_to_chart(std::shared_ptr<const IsotropicCurve> curve, int sheet) {
  return std::make_shared<EnvelopeChart>(std::move(curve), sheet);
}

std::shared_ptr<EnvelopeChart> envelope_chart_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw StructuralError("envelope chart document must be an object");
  std::shared_ptr<IsotropicCurve> curve;
  if (doc.contains("seed")) {
    curve = std::make_shared<IsotropicCurve>(curve_from_weierstrass(WeierstrassSeed::from_json(doc["seed"])));
  } else if (doc.contains("curve")) {
    const auto& c = doc["curve"];
    if (!c.is_object() || !c.contains("m") || !c.contains("components") || !c.contains("domain"))
      throw StructuralError("curve needs m, domain and components");
    std::vector<std::string> comps;
    for (const auto& s : c["components"]) {
      if (!s.is_string()) throw StructuralError("curve components must be strings");
      comps.push_back(s.get<std::string>());
    }
    const int m = c["m"].get<int>();
    curve = std::make_shared<IsotropicCurve>(c.value("name", std::string("curve")), m, box_from_json(c["domain"], 2), comps);
  } else {
    throw StructuralError("envelope chart needs a seed or a curve");
  }
  std::vector<int> pivots;
  if (doc.contains("pivots")) pivots = doc["pivots"].get<std::vector<int>>();
  return std::make_shared<EnvelopeChart>(curve, pivots, doc.value("sheet", 1));
}

RegularityFlags classify_regularity(const Chart& chart, const std::vector<std::vector<double>>& points, double threshold) {
  RegularityFlags out;
  const int m = chart.dim_m();
  for (const auto& u : points) {
    bool ok = false;
    try {
      const Jet4 j = eval_jet(chart, u, 1);
      Eigen::MatrixXd df(j.components(), m);
      for (int a = 0; a < m; ++a) {
        const int v[] = {a};
        df.col(a) = j.derivative(v);
      }
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(df);
      const auto& sv = svd.singularValues();
      ok = sv(0) > 0 && sv(m - 1) / sv(0) > threshold;
    } catch (const Error&) {
      ok = false;
    }
    (ok ? out.regular : out.singular).push_back(u);
  }
  return out;
}

double mean_curvature_sphere_residual(const EnvelopeChart& chart, std::span<const double> u, double h) {
  const int m = chart.dim_m();
  std::vector<double> base(u.begin(), u.end());
  if (!chart.domain().contains(base)) throw DomainError("point outside the chart domain", 0.0);
  auto X = [&](std::vector<double> v) {
    if (!chart.domain().contains(v)) throw DomainError("Laplacian stencil leaves the chart domain", h);
    const Eigen::VectorXd x = chart.value(v);
    LorentzVec out(x.size() + 1);
    out(0) = 1.0;
    out.tail(x.size()) = x;
    return out;
  };
  auto shifted = [&](int a, double sa, int b, double sb) {
    std::vector<double> v = base;
    v[ix(a)] += sa;
    v[ix(b)] += sb;
    return X(v);
  };
  const LorentzVec x0 = X(base);
  std::vector<LorentzVec> d1;
  for (int a = 0; a < m; ++a) d1.push_back((shifted(a, h, a, 0) - shifted(a, -h, a, 0)) / (2 * h));
  Eigen::MatrixXd g(m, m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) g(a, b) = inner(d1[ix(a)], d1[ix(b)]);
  const Eigen::MatrixXd gi = g.inverse();
  LorentzVec lap = LorentzVec::Zero(x0.size());
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      LorentzVec d2;
      if (a == b) {
        d2 = (shifted(a, h, a, 0) - 2 * x0 + shifted(a, -h, a, 0)) / (h * h);
      } else {
        d2 = (shifted(a, h, b, h) - shifted(a, h, b, -h) - shifted(a, -h, b, h) + shifted(a, -h, b, -h)) / (4 * h * h);
      }
      lap += gi(a, b) * d2;
    }
  }
  const Eigen::MatrixXd xi = mean_curvature_plane(chart.curve(), u[0], u[1]);
  double worst = 0.0;
  for (int r = 0; r < 2; ++r) worst = std::max(worst, std::abs(inner(lap, xi.col(r))));
  return worst;
}

double sphere_fit_residual(const std::vector<Eigen::VectorXd>& points, int k) {
  if (points.size() < 2 || k < 1) return 0.0;
  const Eigen::Index n = points[0].size();
  Eigen::VectorXd c = Eigen::VectorXd::Zero(n);
  for (const auto& p : points) c += p;
  c /= static_cast<double>(points.size());
  Eigen::MatrixXd d(static_cast<Eigen::Index>(points.size()), n);
  for (std::size_t j = 0; j < points.size(); ++j) d.row(static_cast<Eigen::Index>(j)) = (points[j] - c).transpose();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(d, Eigen::ComputeThinV);
  const Eigen::MatrixXd basis = svd.matrixV().leftCols(k);
  double worst = 0.0;
  Eigen::MatrixXd y(d.rows(), k);
  for (Eigen::Index j = 0; j < d.rows(); ++j) {
    const Eigen::VectorXd v = d.row(j).transpose();
    y.row(j) = (basis.transpose() * v).transpose();
    worst = std::max(worst, (v - basis * y.row(j).transpose()).norm());
  }
  if (k == 1) return worst;  // two points always lie on a 0-sphere
  // |y - o|^2 = r^2  <=>  2 y.o + (r^2 - |o|^2) = |y|^2
  Eigen::MatrixXd a(d.rows(), k + 1);
  Eigen::VectorXd rhs(d.rows());
  for (Eigen::Index j = 0; j < d.rows(); ++j) {
    a.row(j).head(k) = 2.0 * y.row(j);
    a(j, k) = 1.0;
    rhs(j) = y.row(j).squaredNorm();
  }
  const Eigen::VectorXd sol = a.colPivHouseholderQr().solve(rhs);
  const Eigen::VectorXd o = sol.head(k);
  const double r = std::sqrt(sol(k) + o.squaredNorm());
  for (Eigen::Index j = 0; j < d.rows(); ++j)
    worst = std::max(worst, std::abs((y.row(j).transpose() - o).norm() - r));
  return worst;
}

}  // namespace wintgen
