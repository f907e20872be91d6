#include "wintgen/reporting.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <thread>

#include "wintgen/catalog.hpp"
#include "wintgen/conformal_gauss.hpp"
#include "wintgen/ddvv.hpp"
#include "wintgen/envelope.hpp"
#include "wintgen/errors.hpp"
#include "wintgen/lorentz.hpp"
#include "wintgen/moebius_frame.hpp"
#include "wintgen/surface_geometry.hpp"

namespace wintgen {

namespace {

using json = nlohmann::json;

// exit code 4 carrier
struct SeedFailure : Error {
  SeedFailure(std::string invariant, const std::string& what) : Error(what), invariant(std::move(invariant)) {}
  std::string invariant;
};

json vec_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back(v(k));
  return out;
}

json mat_json(const Eigen::MatrixXd& a) {
  json out = json::array();
  for (Eigen::Index i = 0; i < a.rows(); ++i) out.push_back(vec_json(a.row(i).transpose()));
  return out;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw StructuralError("cannot read '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw StructuralError("'" + path + "' is not valid JSON: " + e.what());
  }
}

std::shared_ptr<const IsotropicCurve> curve_or_fail(const WeierstrassSeed& seed) {
  try {
    return std::make_shared<IsotropicCurve>(curve_from_weierstrass(seed));
  } catch (const PreconditionError& e) {
    throw SeedFailure("isotropy", e.what());
  }
}

struct Input {
  ChartPtr chart;
  std::shared_ptr<const IsotropicCurve> curve;  // seeds only
  json source;
};

Input resolve_input(const RunConfig& cfg) {
  const int given = int(cfg.chart_path.has_value()) + int(cfg.catalog.has_value()) + int(cfg.seed_path.has_value());
  if (given != 1) throw StructuralError("give exactly one of --chart, --catalog, --seed");
  Input in;
  json seed_doc;
  if (cfg.catalog) {
    const CatalogEntry& e = get_entry(*cfg.catalog);
    in.source = {{"catalog", e.name}};
    if (e.is_seed()) seed_doc = e.document["seed"];
    else in.chart = e.chart();
  } else if (cfg.chart_path) {
    in.source = {{"chart", std::filesystem::path(*cfg.chart_path).filename().string()}};
    const json doc = read_json_file(*cfg.chart_path);
    if (doc.is_object() && doc.value("kind", std::string()) == "seed") seed_doc = doc.contains("seed") ? doc["seed"] : doc;
    else in.chart = load_chart(doc);
  } else {
    in.source = {{"seed", std::filesystem::path(*cfg.seed_path).filename().string()}};
    const json doc = read_json_file(*cfg.seed_path);
    seed_doc = doc.is_object() && doc.contains("seed") ? doc["seed"] : doc;
  }
  if (!seed_doc.is_null()) {
    in.curve = curve_or_fail(WeierstrassSeed::from_json(seed_doc));
    try {
      in.chart = envelope_to_chart(in.curve);
    } catch (const GeometryError& e) {
      throw SeedFailure("sphere congruence rank", e.what());
    } catch (const DegeneracyError& e) {
      throw SeedFailure("fiber frame", e.what());
    }
  }
  return in;
}

std::vector<int> grid_counts(const RunConfig& cfg, int m) {
  if (cfg.grid.empty()) return std::vector<int>(static_cast<std::size_t>(m), m == 2 ? 6 : 4);
  if (static_cast<int>(cfg.grid.size()) != m)
    throw StructuralError("--grid needs " + std::to_string(m) + " counts for this chart");
  return cfg.grid;
}

// Cell-centered grid, pulled in by a small margin so that stencils fit.
std::vector<std::vector<double>> grid_points(const Chart& chart, const std::vector<int>& counts, double margin) {
  Box box = chart.domain();
  for (int a = 0; a < box.dim(); ++a) {
    const double w = std::min(margin, 0.25 * (box.hi[a] - box.lo[a]));
    box.lo[a] += w;
    box.hi[a] -= w;
  }
  return cell_grid(box, counts);
}

template <class F>
std::vector<json> parallel_points(const std::vector<std::vector<double>>& points, int workers, F fn) {
  std::vector<json> out(points.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= points.size()) return;
      json rec;
      try {
        rec = fn(points[i]);
      } catch (const std::exception& e) {
        rec = {{"error", e.what()}};
      }
      json head = {{"index", i}, {"u", points[i]}};
      head.update(rec);
      out[i] = std::move(head);
    }
  };
  const int n = std::max(1, std::min<int>(workers, static_cast<int>(points.size())));
  std::vector<std::thread> pool;
  for (int k = 1; k < n; ++k) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  return out;
}

json header(const RunConfig& cfg, const Input& in, const std::vector<int>& counts) {
  return {{"schema", kReportSchema},
          {"command", cfg.command},
          {"input", in.source},
          {"chart", {{"name", in.chart->name()}, {"dim_m", in.chart->dim_m()}, {"codim_p", in.chart->codim_p()}}},
          {"config", {{"grid", counts}, {"h", cfg.h}, {"tol", cfg.tol}, {"rng_seed", cfg.rng_seed}}}};
}

void require_spherical(const Chart& chart, const std::vector<std::vector<double>>& points) {
  const ChartValidation v = validate_chart(chart, points);
  if (!v.sphericity_ok)
    throw StructuralError("chart values leave the unit sphere (defect " + std::to_string(v.max_sphericity_defect) + ")");
}

json ddvv_json(const DdvvReport& r, double tol) {
  const WintgenVerdict v = wintgen_verdict(r, tol);
  json out = {{"K", r.K},         {"H_sq", r.H_sq},    {"K_N", r.K_N},         {"deficit", r.deficit},
              {"rho_sq", r.rho_sq}, {"umbilic", r.umbilic}, {"wintgen", v.ideal}};
  if (!v.reason.empty()) out["reason"] = v.reason;
  if (r.canonical_fit) {
    const CanonicalFit& f = *r.canonical_fit;
    out["canonical"] = {{"lambda1", f.lambda1}, {"lambda2", f.lambda2}, {"lambda3", f.lambda3},
                        {"mu0", f.mu0},         {"residual", f.residual}};
  }
  return out;
}

json check_point(const Chart& chart, std::span<const double> u, double tol) {
  PointGeometry pg;
  try {
    pg = fundamental_forms(chart, u);
  } catch (const DegeneracyError& e) {
    return {{"singular", true}, {"error", e.what()}};
  }
  return ddvv_json(ddvv_report(pg), tol);
}

double value_or(const json& j, const char* key, double fallback) {
  return j.contains(key) && j[key].is_number() ? j[key].get<double>() : fallback;
}

}  // namespace

int worker_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("WINTGEN_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::string format_report(const json& report) { return report.dump(2) + "\n"; }

void validate_config(const RunConfig& cfg) {
  if (cfg.command != "check" && cfg.command != "invariants" && cfg.command != "gaussmap" && cfg.command != "construct")
    throw StructuralError("unknown command '" + cfg.command + "'");
  for (int c : cfg.grid)
    if (c < 2) throw StructuralError("grid counts must be at least 2");
  if (!(cfg.h > 0)) throw StructuralError("--h must be positive");
  if (!(cfg.tol > 0)) throw StructuralError("--tol must be positive");
}

RunResult cmd_check(const RunConfig& cfg) {
  const Input in = resolve_input(cfg);
  const auto counts = grid_counts(cfg, in.chart->dim_m());
  const auto points = grid_points(*in.chart, counts, 0.0);
  require_spherical(*in.chart, points);
  RunResult res;
  res.report = header(cfg, in, counts);
  const std::vector<json> recs =
      parallel_points(points, worker_count(cfg.threads), [&](const std::vector<double>& u) { return check_point(*in.chart, u, cfg.tol); });
  double min_def = std::numeric_limits<double>::infinity();
  int evaluated = 0, ideal = 0, umbilic = 0, singular = 0, violations = 0;
  for (const json& r : recs) {
    if (!r.contains("deficit")) {
      ++singular;
      continue;
    }
    ++evaluated;
    const double d = r["deficit"].get<double>();
    min_def = std::min(min_def, d);
    if (r["wintgen"].get<bool>()) ++ideal;
    if (r["umbilic"].get<bool>()) ++umbilic;
    if (d < -cfg.tol) ++violations;
  }
  if (evaluated == 0) throw StructuralError("no regular grid point");
  res.report["points"] = recs;
  res.report["summary"] = {{"point_count", points.size()},
                           {"singular_count", singular},
                           {"min_deficit", min_def},
                           {"wintgen_fraction", double(ideal) / evaluated},
                           {"umbilic_count", umbilic},
                           {"violations", violations}};
  res.exit_code = violations > 0 ? kExitViolation : kExitOk;
  return res;
}

RunResult cmd_invariants(const RunConfig& cfg) {
  const Input in = resolve_input(cfg);
  const Chart& chart = *in.chart;
  const auto counts = grid_counts(cfg, chart.dim_m());
  const auto points = grid_points(chart, counts, 4 * cfg.h);
  require_spherical(chart, points);
  std::mt19937_64 rng(cfg.rng_seed);
  const Eigen::MatrixXd T = random_lorentz_transform(chart.ambient_dim() + 1, rng, 0.5);
  const TransformedChart moved(in.chart, T);

  auto point = [&](const std::vector<double>& u) -> json {
    MoebiusFrame fr;
    try {
      fr = build_frame(chart, u);
    } catch (const UmbilicError&) {
      return {{"umbilic", true}};
    }
    json out = {{"umbilic", false}};
    json blk = {{"rho", fr.rho}, {"A", mat_json(fr.A)}, {"C", mat_json(fr.C)}};
    json bs = json::array();
    for (const auto& b : fr.B) bs.push_back(mat_json(b));
    blk["B"] = bs;
    blk["identities"] = {{"frame_defect", fr.frame_defect()},
                         {"B_trace_defect", fr.B_trace_defect()},
                         {"B_norm_defect", std::abs(fr.B_norm_sq() - 4.0)}};
    out["moebius"] = blk;

    try {
      const IntegrabilityResiduals r1 = integrability_residuals(chart, u, cfg.h);
      const IntegrabilityResiduals r2 = integrability_residuals(chart, u, cfg.h / 2);
      json eq = json::array();
      for (int k = 0; k < 5; ++k)
        eq.push_back({{"h", r1.equa[k]}, {"h_half", r2.equa[k]}, {"ratio", r2.equa[k] > 0 ? r1.equa[k] / r2.equa[k] : 0.0}});
      out["integrability"] = {{"equa", eq}, {"max_h", r1.max()}, {"max_h_half", r2.max()},
                              {"ratio", r2.max() > 0 ? r1.max() / r2.max() : 0.0}};
    } catch (const Error& e) {
      out["integrability"] = {{"error", e.what()}};
    }

    const DdvvReport rep = ddvv_report(fundamental_forms(chart, u));
    const bool ideal = is_wintgen_ideal(rep, cfg.tol);
    out["wintgen"] = ideal;
    if (ideal && chart.codim_p() >= 2) {
      try {
        const WintgenInvariants w = wintgen_invariants(chart, u, cfg.h);
        json wb = {{"U", w.U}, {"V", w.V}, {"L", w.L}, {"S", vec_json(w.S)}, {"T", vec_json(w.T)}, {"G", w.G}};
        wb["has_eta3"] = w.has_eta3;
        if (w.has_eta3) wb["F"] = w.F;
        if (w.L_a.size() > 0) wb["L_a"] = vec_json(w.L_a);
        wb["residuals"] = {{"connection", w.connection_residual},
                           {"moebius_form", w.moebius_form_residual},
                           {"second_gauss", w.second_gauss_residual},
                           {"eta", w.eta_residual},
                           {"eta_derivative", w.eta_derivative_residual},
                           {"G_consistency", std::abs(w.G - w.G_alt)}};
        out["wintgen_invariants"] = wb;
      } catch (const Error& e) {
        out["wintgen_invariants"] = {{"error", e.what()}};
      }
    }

    const MoebiusFrame mf = build_frame(moved, u);
    const DdvvReport mrep = ddvv_report(fundamental_forms(moved, u));
    out["moebius_invariance"] = {{"B_norm_sq_change", std::abs(mf.B_norm_sq() - fr.B_norm_sq())},
                                 {"normalized_deficit_change", std::abs(mrep.deficit / mrep.rho_sq - rep.deficit / rep.rho_sq)},
                                 {"classification_kept", is_wintgen_ideal(mrep, cfg.tol) == ideal}};
    return out;
  };

  RunResult res;
  res.report = header(cfg, in, counts);
  const std::vector<json> recs = parallel_points(points, worker_count(cfg.threads), point);
  int umbilic = 0, frames = 0, ideal = 0;
  double trace = 0, norm = 0, defect = 0, rmin = std::numeric_limits<double>::infinity(), rmax = 0;
  for (const json& r : recs) {
    if (r.value("umbilic", false)) ++umbilic;
    if (!r.contains("moebius")) continue;
    ++frames;
    if (r.value("wintgen", false)) ++ideal;
    const json& id = r["moebius"]["identities"];
    trace = std::max(trace, id["B_trace_defect"].get<double>());
    norm = std::max(norm, id["B_norm_defect"].get<double>());
    defect = std::max(defect, id["frame_defect"].get<double>());
    if (r["integrability"].contains("ratio")) {
      rmin = std::min(rmin, r["integrability"]["ratio"].get<double>());
      rmax = std::max(rmax, r["integrability"]["ratio"].get<double>());
    }
  }
  res.report["points"] = recs;
  res.report["summary"] = {{"point_count", points.size()},
                           {"umbilic_count", umbilic},
                           {"frame_count", frames},
                           {"wintgen_count", ideal},
                           {"max_B_trace_defect", trace},
                           {"max_B_norm_defect", norm},
                           {"max_frame_defect", defect}};
  if (frames > 0 && rmax > 0) res.report["summary"]["integrability_ratio_range"] = {rmin, rmax};
  if (umbilic == static_cast<int>(points.size())) {
    res.exit_code = kExitUmbilic;
    res.diagnostic = "every grid point is umbilic";
  } else {
    res.exit_code = (trace > 1e-9 || norm > 1e-7) ? kExitViolation : kExitOk;
  }
  return res;
}

RunResult cmd_gaussmap(const RunConfig& cfg) {
  const Input in = resolve_input(cfg);
  const Chart& chart = *in.chart;
  const auto counts = grid_counts(cfg, chart.dim_m());
  const auto points = grid_points(chart, counts, 16 * cfg.h);
  require_spherical(chart, points);
  const double steps[] = {4 * cfg.h, 2 * cfg.h, cfg.h};
  const double root2 = std::sqrt(2.0);

  auto point = [&](const std::vector<double>& u) -> json {
    ConvergenceStudy st;
    try {
      st = convergence_study(chart, u, steps);
    } catch (const UmbilicError&) {
      return {{"umbilic", true}};
    }
    const GaussMapCertificate& c = st.runs.back();
    json out = {{"umbilic", false},
                {"canonical_frame", c.canonical_frame},
                {"singular_values", c.singular_values},
                {"rank", c.rank(10 * c.h)},
                {"submersion_ratio", c.submersion_ratio},
                {"submersion_residual", c.submersion_residual},
                {"tension_norm", c.tension_norm},
                {"circle_residual", c.ellipse.circle_residual},
                {"fiber_angle", c.fiber_angle},
                {"tension_orders", st.tension_orders},
                {"circle_orders", st.circle_orders}};
    if (c.canonical_frame) {
      const bool ok = c.rank(10 * c.h) == 2 && std::abs(c.singular_values[0] - root2) <= 1e-3 &&
                      std::abs(c.singular_values[1] - root2) <= 1e-3 && c.tension_norm <= 1e-4 &&
                      c.ellipse.circle_residual <= 1e-4;
      out["certified"] = ok;
    }
    return out;
  };

  RunResult res;
  res.report = header(cfg, in, counts);
  const std::vector<json> recs = parallel_points(points, worker_count(cfg.threads), point);
  int umbilic = 0, canonical = 0, certified = 0, errors = 0;
  double tension = 0, circle = 0;
  for (const json& r : recs) {
    if (r.contains("error")) ++errors;
    if (r.value("umbilic", false)) ++umbilic;
    if (!r.value("canonical_frame", false)) continue;
    ++canonical;
    if (r.value("certified", false)) ++certified;
    tension = std::max(tension, value_or(r, "tension_norm", 0));
    circle = std::max(circle, value_or(r, "circle_residual", 0));
  }
  res.report["points"] = recs;
  res.report["summary"] = {{"point_count", points.size()}, {"umbilic_count", umbilic},  {"error_count", errors},
                           {"canonical_count", canonical}, {"certified_count", certified}, {"max_tension_norm", tension},
                           {"max_circle_residual", circle}};
  if (umbilic == static_cast<int>(points.size())) {
    res.exit_code = kExitUmbilic;
    res.diagnostic = "every grid point is umbilic";
  } else {
    res.exit_code = certified < canonical ? kExitViolation : kExitOk;
  }
  return res;
}

Eigen::Vector3d display_point(const Eigen::VectorXd& x) {
  const Eigen::Index n = x.size();
  const double den = 1.0 + x(n - 1);
  Eigen::Vector3d out = Eigen::Vector3d::Zero();
  for (Eigen::Index k = 0; k < std::min<Eigen::Index>(3, n - 1); ++k) out(k) = x(k) / den;
  return out;
}

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw StructuralError("cannot write '" + path.string() + "'");
  return out;
}

}  // namespace

void write_obj(const std::filesystem::path& path, const Mesh& mesh) {
  std::ofstream out = open_out(path);
  out << "# wintgen-kit mesh\n";
  for (const auto& v : mesh.vertices) out << "v " << fmt(v(0)) << ' ' << fmt(v(1)) << ' ' << fmt(v(2)) << '\n';
  for (const auto& f : mesh.faces) out << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
  for (const auto& line : mesh.polylines) {
    out << 'l';
    for (int k : line) out << ' ' << k + 1;
    out << '\n';
  }
}

void write_ply(const std::filesystem::path& path, const Mesh& mesh) {
  std::size_t edges = 0;
  for (const auto& line : mesh.polylines) edges += line.size() > 1 ? line.size() - 1 : 0;
  std::ofstream out = open_out(path);
  out << "ply\nformat ascii 1.0\n";
  out << "element vertex " << mesh.vertices.size() << "\nproperty double x\nproperty double y\nproperty double z\n";
  out << "element face " << mesh.faces.size() << "\nproperty list uchar int vertex_indices\n";
  out << "element edge " << edges << "\nproperty int vertex1\nproperty int vertex2\nend_header\n";
  for (const auto& v : mesh.vertices) out << fmt(v(0)) << ' ' << fmt(v(1)) << ' ' << fmt(v(2)) << '\n';
  for (const auto& f : mesh.faces) out << "3 " << f[0] << ' ' << f[1] << ' ' << f[2] << '\n';
  for (const auto& line : mesh.polylines)
    for (std::size_t k = 0; k + 1 < line.size(); ++k) out << line[k] << ' ' << line[k + 1] << '\n';
}

RunResult cmd_construct(const RunConfig& cfg) {
  if (cfg.chart_path) throw StructuralError("construct takes --seed or a seed entry of --catalog");
  if (cfg.catalog && !get_entry(*cfg.catalog).is_seed())
    throw StructuralError("catalog entry '" + *cfg.catalog + "' is not a Weierstrass seed");
  const Input in = resolve_input(cfg);
  const IsotropicCurve& curve = *in.curve;
  const auto& chart = static_cast<const EnvelopeChart&>(*in.chart);
  const int m = chart.dim_m();

  int counts7[] = {7, 7};
  const IsotropyCertificate iso = validate_isotropic(curve, cell_grid(curve.domain(), counts7));
  if (!iso.ok(1e-9)) throw SeedFailure("isotropy", "the curve is not holomorphic and 1-isotropic on its domain");

  const auto counts = grid_counts(cfg, m);
  const auto points = grid_points(chart, counts, 4 * cfg.h);
  auto point = [&](const std::vector<double>& u) -> json {
    const RegularityFlags flags = classify_regularity(chart, {u});
    if (flags.regular.empty()) return {{"regular", false}};
    json out = ddvv_json(ddvv_report(fundamental_forms(chart, u)), cfg.tol);
    out["regular"] = true;
    out["mean_curvature_sphere_residual"] = mean_curvature_sphere_residual(chart, u, cfg.h);
    return out;
  };
  const int workers = worker_count(cfg.threads);
  const std::vector<json> recs = parallel_points(points, workers, point);

  // fibers over the base grid
  const Box& base = curve.domain();
  const int bc[] = {counts[0], counts[1]};
  const auto base_points = cell_grid(base, bc);
  constexpr int kFiberSamples = 24;
  std::vector<std::vector<EnvelopeSample>> fibers(base_points.size());
  const std::vector<json> fiber_recs = parallel_points(base_points, workers, [&](const std::vector<double>& xy) -> json {
    std::vector<EnvelopeSample> s = build_envelope(curve, xy[0], xy[1], kFiberSamples);
    std::vector<Eigen::VectorXd> pts;
    for (const auto& e : s) pts.push_back(e.point);
    return {{"sphericity_residual", sphere_fit_residual(pts, m - 1)}};
  });

  int regular = 0, singular = 0, ideal = 0, errors = 0;
  double min_def = std::numeric_limits<double>::infinity(), mcs = 0, fiber = 0;
  for (const json& r : recs) {
    if (r.contains("error")) {
      ++errors;
      continue;
    }
    if (!r["regular"].get<bool>()) {
      ++singular;
      continue;
    }
    ++regular;
    min_def = std::min(min_def, r["deficit"].get<double>());
    if (r["wintgen"].get<bool>()) ++ideal;
    mcs = std::max(mcs, r["mean_curvature_sphere_residual"].get<double>());
  }
  int fiber_errors = 0;
  for (const json& r : fiber_recs) {
    if (r.contains("sphericity_residual")) fiber = std::max(fiber, r["sphericity_residual"].get<double>());
    else ++fiber_errors;
  }
  if (regular == 0) throw SeedFailure("regularity", "the envelope has no regular grid point");

  RunResult res;
  res.report = header(cfg, in, counts);
  res.report["seed"] = curve.to_json();
  res.report["pivots"] = chart.pivots();
  res.report["isotropy"] = {{"null_residual", iso.null_residual},
                            {"derivative_null_residual", iso.derivative_null_residual},
                            {"holomorphic_residual", iso.holomorphic_residual},
                            {"min_positivity", iso.min_positivity}};
  res.report["points"] = recs;
  res.report["fibers"] = fiber_recs;
  res.report["summary"] = {{"point_count", points.size()},
                           {"regular_count", regular},
                           {"singular_count", singular},
                           {"error_count", errors + fiber_errors},
                           {"min_deficit", min_def},
                           {"wintgen_fraction", double(ideal) / regular},
                           {"max_fiber_sphericity", fiber},
                           {"max_mean_curvature_sphere_residual", mcs}};
  const bool bad = min_def < -cfg.tol || ideal < regular || fiber > 1e-8 || mcs > 1e-4;
  res.exit_code = bad ? kExitViolation : kExitOk;

  if (cfg.out_dir) {
    std::filesystem::create_directories(*cfg.out_dir);
    // slice at the center of the fiber angles
    Mesh slice;
    const std::vector<double> mid = chart.domain().center();
    for (const auto& xy : base_points) {
      std::vector<double> u = mid;
      u[0] = xy[0];
      u[1] = xy[1];
      Eigen::Vector3d v = Eigen::Vector3d::Zero();
      try {
        v = display_point(chart.value(u));
      } catch (const Error&) {
      }
      slice.vertices.push_back(v);
    }
    for (int i = 0; i + 1 < bc[0]; ++i) {
      for (int j = 0; j + 1 < bc[1]; ++j) {
        const int a = i * bc[1] + j, b = (i + 1) * bc[1] + j;
        slice.faces.push_back({a, b, b + 1});
        slice.faces.push_back({a, b + 1, a + 1});
      }
    }
    Mesh circles;
    for (const auto& xy : base_points) {
      std::vector<int> line;
      for (const auto& e : build_envelope(curve, xy[0], xy[1], kFiberSamples)) {
        line.push_back(static_cast<int>(circles.vertices.size()));
        circles.vertices.push_back(display_point(e.point));
      }
      if (m > 2 && !line.empty()) line.push_back(line.front());
      circles.polylines.push_back(line);
    }
    write_obj(*cfg.out_dir / "slice.obj", slice);
    write_ply(*cfg.out_dir / "slice.ply", slice);
    write_obj(*cfg.out_dir / "fibers.obj", circles);
    write_ply(*cfg.out_dir / "fibers.ply", circles);
    std::ofstream(*cfg.out_dir / "chart.json", std::ios::binary) << chart.to_json().dump(2) << '\n';
    res.report["outputs"] = {"chart.json", "slice.obj", "slice.ply", "fibers.obj", "fibers.ply"};
    res.report["mesh"] = {{"slice_vertices", slice.vertices.size()}, {"slice_faces", slice.faces.size()},
                          {"fiber_vertices", circles.vertices.size()}};
  }
  return res;
}

RunResult run_command(const RunConfig& cfg) {
  RunResult res;
  try {
    validate_config(cfg);
    if (cfg.command == "check") res = cmd_check(cfg);
    else if (cfg.command == "invariants") res = cmd_invariants(cfg);
    else if (cfg.command == "gaussmap") res = cmd_gaussmap(cfg);
    else res = cmd_construct(cfg);
  } catch (const SeedFailure& e) {
    res = {};
    res.exit_code = kExitDegenerateSeed;
    res.diagnostic = e.invariant + ": " + e.what();
    res.report = {{"schema", kReportSchema}, {"command", cfg.command}, {"failed_invariant", e.invariant}, {"diagnostic", e.what()}};
  } catch (const Error& e) {
    res = {};
    res.exit_code = kExitBadInput;
    res.diagnostic = e.what();
    res.report = {{"schema", kReportSchema}, {"command", cfg.command}, {"diagnostic", e.what()}};
  }
  if (cfg.out_dir) {
    std::filesystem::create_directories(*cfg.out_dir);
    std::ofstream(*cfg.out_dir / "report.json", std::ios::binary) << format_report(res.report);
  }
  return res;
}

}  // namespace wintgen
