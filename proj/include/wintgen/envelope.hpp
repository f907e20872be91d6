#pragma once

// Wintgen ideal submanifolds of codimension 2 from holomorphic 1-isotropic
// curves [xi] in the complex quadric: the envelope of the sphere congruence
// V = span{Re xi, Im xi, Re xi_z, Im xi_z} carries S^{m-2} fibers, the null
// directions of the Lorentzian complement of V.

#include <Eigen/Dense>
#include <complex>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "wintgen/chart.hpp"
#include "wintgen/expression.hpp"
#include "wintgen/lorentz.hpp"
#include "wintgen/series.hpp"

namespace wintgen {

// Holomorphic null curve W: U in C -> C^{m+2}, W_z . W_z = 0.
struct WeierstrassSeed {
  std::string name;
  int m = 3;
  Box domain;  // in (x, y), z = x + i y
  std::vector<std::string> components;

  nlohmann::json to_json() const;
  // {m, components, optional domain [[lo,hi],[lo,hi]], optional name}
  static WeierstrassSeed from_json(const nlohmann::json& doc);
};

// z -> xi(z) in C^{m+4} with the Lorentz form of signature (1, m+3).
// Components are expressions in z and zbar.
class IsotropicCurve {
 public:
  IsotropicCurve(std::string name, int m, Box domain, std::vector<std::string> components);

  int m() const noexcept { return m_; }
  int target_dim() const noexcept { return m_ + 4; }
  const Box& domain() const noexcept { return domain_; }
  const std::string& name() const noexcept { return name_; }
  const std::vector<std::string>& components() const noexcept { return sources_; }

  // x and y are real series in a common layout.
  CVecSeries evaluate(const RSeries& x, const RSeries& y) const;
  Eigen::VectorXcd value(double x, double y) const;
  // xi and xi_z at a point.
  std::pair<Eigen::VectorXcd, Eigen::VectorXcd> jet1(double x, double y) const;

  nlohmann::json to_json() const;

 private:
  std::string name_;
  int m_;
  Box domain_;
  std::vector<std::string> sources_;
  std::vector<Expression> exprs_;
};

// PreconditionError if W_z . W_z != 0 or <xi, conj xi> <= 0 on a sample
// grid of the domain.
IsotropicCurve curve_from_weierstrass(const WeierstrassSeed& seed, int samples_per_axis = 7);

struct IsotropyCertificate {
  double null_residual = 0.0;         // max |<xi, xi>|
  double derivative_null_residual = 0.0;  // max |<xi_z, xi_z>|
  double holomorphic_residual = 0.0;  // max |xi_zbar mod xi| / |xi|
  double min_positivity = 0.0;        // min <xi, conj xi>
  int samples = 0;
  bool ok(double tol = 1e-10) const;
};

IsotropyCertificate validate_isotropic(const IsotropicCurve& curve, const std::vector<std::vector<double>>& grid);

struct EnvelopeSample {
  double x = 0.0;
  double y = 0.0;
  Eigen::VectorXd lambda;  // point of S^{m-2}: coefficients on the spacelike part of V^perp
  LorentzVec Yhat;         // lightlike, 0-component 1
  Eigen::VectorXd point;   // on S^{m+2}
  Eigen::MatrixXd V_frame; // orthonormal spacelike basis of V
};

// GeometryError if V is not spacelike of rank 4 at z.
std::vector<EnvelopeSample> build_envelope(const IsotropicCurve& curve, double x, double y, int fiber_samples);

// Orthonormal basis of V (columns) and of span{Re xi, Im xi}.
Eigen::MatrixXd sphere_bundle_frame(const IsotropicCurve& curve, double x, double y);
Eigen::MatrixXd mean_curvature_plane(const IsotropicCurve& curve, double x, double y);

// (x, y, fiber angles) -> envelope point. For m >= 3 the angles are
// hyperspherical coordinates on S^{m-2}: polar angles in (0, pi) and a last
// azimuth; m = 2 has no angle and `sheet` picks one of the two points.
class EnvelopeChart final : public Chart {
 public:
  EnvelopeChart(std::shared_ptr<const IsotropicCurve> curve, int sheet = 1);
  EnvelopeChart(std::shared_ptr<const IsotropicCurve> curve, std::vector<int> pivots, int sheet);

  int dim_m() const override { return curve_->m(); }
  int codim_p() const override { return 2; }
  const Box& domain() const override { return domain_; }
  std::string name() const override { return curve_->name() + "-envelope"; }
  RVecSeries evaluate(std::span<const double> u, int order) const override;
  nlohmann::json to_json() const override;

  const IsotropicCurve& curve() const noexcept { return *curve_; }
  const std::vector<int>& pivots() const noexcept { return pivots_; }

 private:
  std::shared_ptr<const IsotropicCurve> curve_;
  std::vector<int> pivots_;
  int sheet_;
  Box domain_;
};

std::shared_ptr<EnvelopeChart> envelope_to_chart(std::shared_ptr<const IsotropicCurve> curve, int sheet = 1);
std::shared_ptr<EnvelopeChart> envelope_chart_from_json(const nlohmann::json& doc);

struct RegularityFlags {
  std::vector<std::vector<double>> regular;
  std::vector<std::vector<double>> singular;  // rank drop or construction failure
};

// Immersion test by the ratio of extreme singular values of df.
RegularityFlags classify_regularity(const Chart& chart, const std::vector<std::vector<double>>& points,
                                    double threshold = 1e-6);

// max_r |<Delta X, xi_r>| for X = (1, x) with the Laplacian of the induced
// metric from central differences of step h; xi_r orthonormal in
// span{Re xi, Im xi} at the base point.
double mean_curvature_sphere_residual(const EnvelopeChart& chart, std::span<const double> u, double h);

// Residual of the best fitting round (k-1)-sphere in a k-dimensional
// affine plane through the points: max of the out-of-plane distance and
// the radial deviation.
double sphere_fit_residual(const std::vector<Eigen::VectorXd>& points, int k);

}  // namespace wintgen
