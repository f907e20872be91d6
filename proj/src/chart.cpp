#include "wintgen/chart.hpp"

#include <cmath>
#include <functional>

#include "wintgen/errors.hpp"

namespace wintgen {

bool Box::contains(std::span<const double> u, double margin) const {
  if (static_cast<int>(u.size()) != dim()) return false;
  for (std::size_t k = 0; k < u.size(); ++k) {
    if (u[k] < lo[k] + margin || u[k] > hi[k] - margin) return false;
  }
  return true;
}

std::vector<double> Box::center() const {
  std::vector<double> c(lo.size());
  for (std::size_t k = 0; k < lo.size(); ++k) c[k] = 0.5 * (lo[k] + hi[k]);
  return c;
}

Eigen::VectorXd Chart::value(std::span<const double> u) const {
  const RVecSeries s = evaluate(u, 0);
  Eigen::VectorXd v(static_cast<Eigen::Index>(s.size()));
  for (std::size_t k = 0; k < s.size(); ++k) v(static_cast<Eigen::Index>(k)) = s[k].value();
  return v;
}

nlohmann::json Chart::to_json() const { return nullptr; }

namespace {

std::vector<std::string> chart_variables(int m) {
  std::vector<std::string> v;
  for (int a = 1; a <= m; ++a) v.push_back("u" + std::to_string(a));
  return v;
}

RVecSeries coordinate_series(std::span<const double> u, int order) {
  auto layout = MonomialLayout::get(static_cast<int>(u.size()), order);
  RVecSeries vars;
  for (std::size_t a = 0; a < u.size(); ++a) vars.push_back(RSeries::variable(layout, static_cast<int>(a), u[a]));
  return vars;
}

}  // namespace

ExprChart::ExprChart(std::string name, int dim_m, int codim_p, Box domain,
                     const std::vector<std::string>& components)
    : name_(std::move(name)), m_(dim_m), p_(codim_p), domain_(std::move(domain)) {
  if (m_ < 2) throw StructuralError("chart dimension must be at least 2");
  if (p_ < 1) throw StructuralError("chart codimension must be at least 1");
  if (domain_.dim() != m_ || static_cast<int>(domain_.hi.size()) != m_) {
    throw StructuralError("chart domain has " + std::to_string(domain_.dim()) + " axes, expected " + std::to_string(m_));
  }
  for (int a = 0; a < m_; ++a) {
    if (!(domain_.lo[static_cast<std::size_t>(a)] < domain_.hi[static_cast<std::size_t>(a)])) {
      throw StructuralError("chart domain axis " + std::to_string(a + 1) + " is empty");
    }
  }
  if (static_cast<int>(components.size()) != m_ + p_ + 1) {
    throw StructuralError("chart has " + std::to_string(components.size()) + " components, expected " +
                          std::to_string(m_ + p_ + 1));
  }
  const auto vars = chart_variables(m_);
  for (const auto& c : components) exprs_.push_back(Expression::parse(c, vars));
}

RVecSeries ExprChart::evaluate(std::span<const double> u, int order) const {
  if (static_cast<int>(u.size()) != m_) throw StructuralError("chart point has wrong dimension");
  const RVecSeries vars = coordinate_series(u, order);
  auto layout = vars.front().layout();
  auto make = [&](std::complex<double> c) { return RSeries(layout, c.real()); };
  RVecSeries out;
  out.reserve(exprs_.size());
  for (const auto& e : exprs_) out.push_back(e.evaluate<RSeries>(std::span<const RSeries>(vars), make));
  return out;
}

nlohmann::json ExprChart::to_json() const {
  nlohmann::json dom = nlohmann::json::array();
  for (int a = 0; a < m_; ++a) dom.push_back({domain_.lo[static_cast<std::size_t>(a)], domain_.hi[static_cast<std::size_t>(a)]});
  nlohmann::json comps = nlohmann::json::array();
  for (const auto& e : exprs_) comps.push_back(e.source());
  return {{"kind", "expression"}, {"name", name_}, {"dim_m", m_}, {"codim_p", p_}, {"domain", dom}, {"components", comps}};
}

std::shared_ptr<ExprChart> expr_chart_from_json(const nlohmann::json& doc) {
  try {
    const int m = doc.at("dim_m").get<int>();
    const int p = doc.at("codim_p").get<int>();
    Box box;
    for (const auto& axis : doc.at("domain")) {
      if (axis.size() != 2) throw StructuralError("domain axis must be [lo, hi]");
      box.lo.push_back(axis.at(0).get<double>());
      box.hi.push_back(axis.at(1).get<double>());
    }
    const auto comps = doc.at("components").get<std::vector<std::string>>();
    const std::string name = doc.value("name", std::string("chart"));
    return std::make_shared<ExprChart>(name, m, p, std::move(box), comps);
  } catch (const nlohmann::json::exception& e) {
    throw StructuralError(std::string("malformed chart document: ") + e.what());
  }
}

TransformedChart::TransformedChart(ChartPtr base, Eigen::MatrixXd lorentz) : base_(std::move(base)), t_(std::move(lorentz)) {
  const int n = base_->ambient_dim() + 1;
  if (t_.rows() != n || t_.cols() != n) throw StructuralError("Lorentz transform has the wrong size");
}

RVecSeries TransformedChart::evaluate(std::span<const double> u, int order) const {
  const RVecSeries f = base_->evaluate(u, order);
  const auto n = static_cast<Eigen::Index>(f.size()) + 1;
  auto layout = f.front().layout();
  RVecSeries y;
  for (Eigen::Index i = 0; i < n; ++i) {
    RSeries s(layout, t_(i, 0), order);
    for (Eigen::Index j = 1; j < n; ++j) s += t_(i, j) * f[static_cast<std::size_t>(j - 1)];
    y.push_back(std::move(s));
  }
  const RSeries inv = 1.0 / y[0];
  RVecSeries out;
  for (Eigen::Index i = 1; i < n; ++i) out.push_back(y[static_cast<std::size_t>(i)] * inv);
  return out;
}

Jet4::Jet4(std::vector<double> point, RVecSeries components)
    : point_(std::move(point)), components_(std::move(components)) {}

Eigen::VectorXd Jet4::value() const {
  Eigen::VectorXd v(components());
  for (int k = 0; k < components(); ++k) v(k) = components_[static_cast<std::size_t>(k)].value();
  return v;
}

Eigen::VectorXd Jet4::partial(std::span<const int> alpha) const {
  Eigen::VectorXd v(components());
  for (int k = 0; k < components(); ++k) v(k) = components_[static_cast<std::size_t>(k)].partial(alpha);
  return v;
}

Eigen::VectorXd Jet4::derivative(std::span<const int> vars) const {
  std::vector<int> alpha(point_.size(), 0);
  for (int a : vars) alpha[static_cast<std::size_t>(a)]++;
  return partial(alpha);
}

Jet4 eval_jet(const Chart& chart, std::span<const double> u, int order) {
  if (order < 0 || order > 4) throw StructuralError("jet order must lie in 0..4");
  return Jet4(std::vector<double>(u.begin(), u.end()), chart.evaluate(u, order));
}

namespace {

struct Stencil1D {
  std::vector<int> offsets;
  std::vector<double> weights;  // times h^-k
};

Stencil1D central_stencil(int k) {
  switch (k) {
    case 0:
      return {{0}, {1.0}};
    case 1:
      return {{-1, 1}, {-0.5, 0.5}};
    case 2:
      return {{-1, 0, 1}, {1.0, -2.0, 1.0}};
    case 3:
      return {{-2, -1, 1, 2}, {-0.5, 1.0, -1.0, 0.5}};
    case 4:
      return {{-2, -1, 0, 1, 2}, {1.0, -4.0, 6.0, -4.0, 1.0}};
    default:
      throw StructuralError("finite differences support orders up to 4");
  }
}

Eigen::VectorXd tensor_difference(const Chart& chart, std::span<const double> u, std::span<const int> alpha, double h) {
  const std::size_t m = u.size();
  std::vector<Stencil1D> st;
  int total = 0;
  for (std::size_t a = 0; a < m; ++a) {
    st.push_back(central_stencil(alpha[a]));
    total += alpha[a];
  }
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(chart.ambient_dim());
  std::vector<double> x(u.begin(), u.end());
  std::function<void(std::size_t, double)> rec = [&](std::size_t a, double w) {
    if (a == m) {
      acc += w * chart.value(x);
      return;
    }
    for (std::size_t j = 0; j < st[a].offsets.size(); ++j) {
      x[a] = u[a] + st[a].offsets[j] * h;
      rec(a + 1, w * st[a].weights[j]);
    }
    x[a] = u[a];
  };
  rec(0, 1.0);
  return acc / std::pow(h, total);
}

}  // namespace

Eigen::VectorXd fd_partial(const Chart& chart, std::span<const double> u, std::span<const int> alpha, double h) {
  if (alpha.size() != u.size()) throw StructuralError("multi-index has wrong length");
  const Eigen::VectorXd dh = tensor_difference(chart, u, alpha, h);
  const Eigen::VectorXd d2h = tensor_difference(chart, u, alpha, 2.0 * h);
  return (4.0 * dh - d2h) / 3.0;
}

std::vector<std::vector<double>> cell_grid(const Box& box, std::span<const int> counts) {
  if (static_cast<int>(counts.size()) != box.dim()) throw StructuralError("grid has the wrong number of axes");
  for (int c : counts) {
    if (c < 1) throw StructuralError("grid counts must be positive");
  }
  std::vector<std::vector<double>> pts(1);
  for (std::size_t a = 0; a < counts.size(); ++a) {
    std::vector<std::vector<double>> next;
    const double step = (box.hi[a] - box.lo[a]) / counts[a];
    for (const auto& p : pts) {
      for (int k = 0; k < counts[a]; ++k) {
        auto q = p;
        q.push_back(box.lo[a] + (k + 0.5) * step);
        next.push_back(std::move(q));
      }
    }
    pts = std::move(next);
  }
  return pts;
}

}  // namespace wintgen
