#pragma once

// Parametrized immersions f: U in R^m -> S^{m+p} and their 4-jets.

#include <Eigen/Dense>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "wintgen/expression.hpp"
#include "wintgen/series.hpp"
#include "wintgen/tolerances.hpp"

namespace wintgen {

struct Box {
  std::vector<double> lo;
  std::vector<double> hi;

  int dim() const noexcept { return static_cast<int>(lo.size()); }
  bool contains(std::span<const double> u, double margin = 0.0) const;
  std::vector<double> center() const;
};

class Chart {
 public:
  virtual ~Chart() = default;

  virtual int dim_m() const = 0;
  virtual int codim_p() const = 0;
  int ambient_dim() const { return dim_m() + codim_p() + 1; }
  virtual const Box& domain() const = 0;
  virtual std::string name() const = 0;

  // Components of f as truncated Taylor series about u, exact to `order`.
  virtual RVecSeries evaluate(std::span<const double> u, int order) const = 0;

  Eigen::VectorXd value(std::span<const double> u) const;

  // Serializable description, or null when the chart has no file form.
  virtual nlohmann::json to_json() const;
};

using ChartPtr = std::shared_ptr<const Chart>;

// Components given as expression strings in u1..um.
class ExprChart final : public Chart {
 public:
  ExprChart(std::string name, int dim_m, int codim_p, Box domain, const std::vector<std::string>& components);

  int dim_m() const override { return m_; }
  int codim_p() const override { return p_; }
  const Box& domain() const override { return domain_; }
  std::string name() const override { return name_; }
  RVecSeries evaluate(std::span<const double> u, int order) const override;
  nlohmann::json to_json() const override;

  const std::vector<Expression>& components() const noexcept { return exprs_; }

 private:
  std::string name_;
  int m_;
  int p_;
  Box domain_;
  std::vector<Expression> exprs_;
};

// f' = pi(T (1, f)), the Moebius transform realized by a Lorentz matrix T.
class TransformedChart final : public Chart {
 public:
  TransformedChart(ChartPtr base, Eigen::MatrixXd lorentz);

  int dim_m() const override { return base_->dim_m(); }
  int codim_p() const override { return base_->codim_p(); }
  const Box& domain() const override { return base_->domain(); }
  std::string name() const override { return base_->name() + "+moebius"; }
  RVecSeries evaluate(std::span<const double> u, int order) const override;

  const Eigen::MatrixXd& transform() const noexcept { return t_; }

 private:
  ChartPtr base_;
  Eigen::MatrixXd t_;
};

// Parses {dim_m, codim_p, domain: [[lo,hi],...], components: [...]}; other
// kinds are dispatched by load_chart in catalog.hpp.
std::shared_ptr<ExprChart> expr_chart_from_json(const nlohmann::json& doc);

// Value and all partials of order <= `order` at a point. Partials are read
// from the Taylor coefficients, so mixed partials are symmetric by storage.
class Jet4 {
 public:
  Jet4() = default;
  Jet4(std::vector<double> point, RVecSeries components);

  const std::vector<double>& point() const noexcept { return point_; }
  int order() const { return components_.empty() ? 0 : components_.front().order(); }
  int components() const noexcept { return static_cast<int>(components_.size()); }
  const RVecSeries& series() const noexcept { return components_; }

  Eigen::VectorXd value() const;
  // Partial derivative d^alpha of every component; alpha is a multi-index.
  Eigen::VectorXd partial(std::span<const int> alpha) const;
  // Same for a derivative given by a list of variable indices (order free).
  Eigen::VectorXd derivative(std::span<const int> vars) const;

 private:
  std::vector<double> point_;
  RVecSeries components_;
};

Jet4 eval_jet(const Chart& chart, std::span<const double> u, int order);

// Finite-difference backend: tensor-product second-order central stencils
// combined by one Richardson step over (h, 2h), which cancels the h^2 term
// and leaves an O(h^4) error. Needs a margin of 2h * ceil(k/2) + 2h.
Eigen::VectorXd fd_partial(const Chart& chart, std::span<const double> u, std::span<const int> alpha, double h);

struct ChartValidation {
  double max_sphericity_defect = 0.0;
  double min_singular_value = 0.0;
  bool sphericity_ok = true;
  bool rank_ok = true;
  std::vector<std::vector<double>> umbilic_suspects;
  std::vector<std::vector<double>> failures;  // points with evaluation errors
  bool ok() const { return sphericity_ok && rank_ok && failures.empty(); }
};

// Cell-centered grid over a box; counts per axis.
std::vector<std::vector<double>> cell_grid(const Box& box, std::span<const int> counts);

ChartValidation validate_chart(const Chart& chart, const std::vector<std::vector<double>>& points,
                               const Tolerances& tol = default_tolerances());

}  // namespace wintgen
