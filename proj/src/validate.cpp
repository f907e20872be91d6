#include <cmath>

#include "wintgen/chart.hpp"
#include "wintgen/errors.hpp"
#include "wintgen/surface_geometry.hpp"

namespace wintgen {

ChartValidation validate_chart(const Chart& chart, const std::vector<std::vector<double>>& points, const Tolerances& tol) {
  ChartValidation out;
  out.min_singular_value = std::numeric_limits<double>::infinity();
  const int m = chart.dim_m();
  for (const auto& u : points) {
    try {
      const Jet4 jet = eval_jet(chart, u, 2);
      const Eigen::VectorXd f = jet.value();
      if (f.size() != chart.ambient_dim()) throw StructuralError("chart has the wrong number of components");
      out.max_sphericity_defect = std::max(out.max_sphericity_defect, std::abs(f.norm() - 1.0));
      Eigen::MatrixXd df(f.size(), m);
      for (int a = 0; a < m; ++a) {
        const int v[] = {a};
        df.col(a) = jet.derivative(v);
      }
      const double smin = Eigen::JacobiSVD<Eigen::MatrixXd>(df).singularValues()(m - 1);
      out.min_singular_value = std::min(out.min_singular_value, smin);
      if (smin < tol.immersion) continue;
      const PointGeometry pg = fundamental_forms(jet, m, chart.codim_p());
      if (pg.traceless_norm_sq() / 4.0 < tol.umbilic) out.umbilic_suspects.push_back(u);
    } catch (const Error&) {
      out.failures.push_back(u);
    }
  }
  out.sphericity_ok = out.max_sphericity_defect <= tol.sphere;
  out.rank_ok = out.min_singular_value >= tol.immersion;
  return out;
}

}  // namespace wintgen
