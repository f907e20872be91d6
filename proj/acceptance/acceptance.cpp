// Acceptance suite: one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "oracle/fd_curvature.hpp"
#include "wintgen/catalog.hpp"
#include "wintgen/conformal_gauss.hpp"
#include "wintgen/ddvv.hpp"
#include "wintgen/envelope.hpp"
#include "wintgen/errors.hpp"
#include "wintgen/moebius_frame.hpp"
#include "wintgen/reporting.hpp"
#include "wintgen/surface_geometry.hpp"

using namespace wintgen;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

std::string sci(double x) { return fmt("%.3g", x); }

Box shrink(const Box& b, double frac) {
  Box out = b;
  for (int a = 0; a < b.dim(); ++a) {
    const double w = frac * (b.hi[a] - b.lo[a]);
    out.lo[a] += w;
    out.hi[a] -= w;
  }
  return out;
}

std::vector<double> sample(const Box& b, std::mt19937_64& rng) {
  std::vector<double> u;
  for (int a = 0; a < b.dim(); ++a) u.push_back(std::uniform_real_distribution<double>(b.lo[a], b.hi[a])(rng));
  return u;
}

std::vector<std::pair<std::string, ChartPtr>> catalog_charts() {
  std::vector<std::pair<std::string, ChartPtr>> out;
  for (const auto& n : catalog_names()) out.emplace_back(n, get_entry(n).chart());
  return out;
}

Outcome fuzz_ddvv() {
  std::mt19937_64 rng(20240501);
  int charts = 0, points = 0, skipped = 0;
  double worst = std::numeric_limits<double>::infinity();
  const int ms[] = {2, 3}, ps[] = {1, 2, 3};
  for (int k = 0; k < 1002; ++k) {
    const int m = ms[k % 2], p = ps[(k / 2) % 3];
    auto chart = random_trig_chart(m, p, rng);
    ++charts;
    int got = 0;
    for (int attempt = 0; got < 10 && attempt < 100; ++attempt) {
      const auto u = sample(chart->domain(), rng);
      try {
        const double d = ddvv_deficit(fundamental_forms(*chart, u));
        worst = std::min(worst, d);
        ++got;
      } catch (const DegeneracyError&) {
        ++skipped;
      }
    }
    points += got;
    if (got < 10) return {false, "chart " + std::to_string(k) + " has fewer than 10 regular points"};
  }
  return {worst >= -1e-8, std::to_string(charts) + " charts, " + std::to_string(points) + " points, min deficit " +
                              sci(worst) + ", " + std::to_string(skipped) + " singular samples redrawn"};
}

Outcome equality_case() {
  auto ver = get_entry("veronese_s4").chart();
  auto cli = get_entry("clifford_torus_s3_in_s4").chart();
  std::mt19937_64 rng(7);
  const Box vb = shrink(ver->domain(), 0.05);
  double dev = 0.0, oracle_dev = 0.0, cdev = 0.0;
  for (int k = 0; k < 10; ++k) {
    const auto u = sample(vb, rng);
    const DdvvReport r = ddvv_report(fundamental_forms(*ver, u));
    const oracle::Curvatures o = oracle::curvatures(oracle::veronese, Eigen::Map<const Eigen::VectorXd>(u.data(), 2), 2);
    dev = std::max({dev, std::abs(r.deficit), std::abs(r.K - 1.0 / 3.0), std::abs(r.K_N - 2.0 / 3.0)});
    oracle_dev = std::max({oracle_dev, std::abs(o.K - 1.0 / 3.0), std::abs(o.K_N - 2.0 / 3.0)});
    const auto w = sample(cli->domain(), rng);
    cdev = std::max(cdev, std::abs(ddvv_report(fundamental_forms(*cli, w)).deficit - 1.0));
  }
  return {dev <= 1e-6 && oracle_dev <= 1e-6 && cdev <= 1e-6,
          "Veronese max |deficit|, |K - 1/3|, |K_N - 2/3| = " + sci(dev) + " (oracle " + sci(oracle_dev) +
              "), Clifford |deficit - 1| = " + sci(cdev)};
}

Outcome canonical_form() {
  std::mt19937_64 rng(99);
  std::normal_distribution<double> nd;
  std::uniform_real_distribution<double> lam(-1.0, 1.0), mu(0.1, 2.0);
  double res = 0.0, perr = 0.0;
  for (int t = 0; t < 200; ++t) {
    const int m = 2 + t % 3, p = 2 + (t / 3) % 2;
    const double l1 = lam(rng), l2 = lam(rng), l3 = p >= 3 ? lam(rng) : 0.0, mu0 = mu(rng);
    const auto pattern = wintgen_pattern(m, p, l1, l2, l3, mu0);
    const Eigen::MatrixXd qt = Eigen::HouseholderQR<Eigen::MatrixXd>(
                                   Eigen::MatrixXd::NullaryExpr(m, m, [&] { return nd(rng); })).householderQ();
    const Eigen::MatrixXd qn = Eigen::HouseholderQR<Eigen::MatrixXd>(
                                   Eigen::MatrixXd::NullaryExpr(p, p, [&] { return nd(rng); })).householderQ();
    std::vector<Eigen::MatrixXd> ops(static_cast<std::size_t>(p), Eigen::MatrixXd::Zero(m, m));
    for (int s = 0; s < p; ++s)
      for (int r = 0; r < p; ++r) ops[s] += qn(s, r) * qt * pattern[r] * qt.transpose();
    try {
      const ReferenceFrames ref{qt, qn};
      const CanonicalFit f = fit_canonical_frames(ops, 1e-9, &ref);
      const CanonicalFit g = fit_canonical_frames(ops, 1e-9);
      res = std::max({res, f.residual, g.residual});
      perr = std::max({perr, std::abs(f.lambda1 - l1), std::abs(f.lambda2 - l2), std::abs(f.lambda3 - l3),
                       std::abs(f.mu0 - mu0), std::abs(g.mu0 - mu0),
                       std::abs(std::hypot(g.lambda1, g.lambda2) - std::hypot(l1, l2)),
                       std::abs(std::abs(g.lambda3) - std::abs(l3))});
    } catch (const Error& e) {
      return {false, std::string("trial ") + std::to_string(t) + ": " + e.what()};
    }
  }
  return {res <= 1e-9 && perr <= 1e-9, "200 trials, max residual " + sci(res) + ", max parameter error " + sci(perr)};
}

Outcome frame_identities() {
  double trace = 0.0, norm = 0.0;
  int points = 0, umbilic = 0;
  std::string per;
  for (const auto& [name, chart] : catalog_charts()) {
    const int m = chart->dim_m();
    const std::vector<int> counts(static_cast<std::size_t>(m), m == 2 ? 5 : 3);
    for (const auto& u : cell_grid(shrink(chart->domain(), 0.02), counts)) {
      try {
        const MoebiusFrame fr = build_frame(*chart, u);
        trace = std::max(trace, fr.B_trace_defect());
        norm = std::max(norm, std::abs(fr.B_norm_sq() - 4.0));
        ++points;
      } catch (const UmbilicError&) {
        ++umbilic;
      }
    }
  }
  return {trace <= 1e-9 && norm <= 1e-7 && points > 0,
          std::to_string(points) + " non-umbilic points (" + std::to_string(umbilic) +
              " umbilic skipped), max |tr B^r| " + sci(trace) + ", max |sum B^2 - 4| " + sci(norm)};
}

Outcome integrability() {
  std::mt19937_64 rng(5);
  const double h = 4e-3;
  double lo = 1e9, hi = 0.0;
  int points = 0;
  std::string detail;
  bool ok = true;
  for (const auto& [name, chart] : catalog_charts()) {
    const Box box = shrink(chart->domain(), 0.05);
    double clo = 1e9, chi = 0.0, big = 0.0;
    int cp = 0;
    for (int k = 0; k < 5; ++k) {
      const auto u = sample(box, rng);
      try {
        const double r1 = integrability_residuals(*chart, u, h).max();
        const double r2 = integrability_residuals(*chart, u, h / 2).max();
        const double ratio = r1 / r2;
        clo = std::min(clo, ratio);
        chi = std::max(chi, ratio);
        big = std::max(big, r1);
        ++cp;
      } catch (const UmbilicError&) {
      }
    }
    if (cp == 0) {
      detail += " " + name + ": umbilic;";
      continue;
    }
    points += cp;
    lo = std::min(lo, clo);
    hi = std::max(hi, chi);
    ok = ok && clo >= 3.5 && chi <= 4.5;
    detail += " " + name + ": " + fmt("%.3f", clo) + ".." + fmt("%.3f", chi) + " (max residual " + sci(big) + ");";
  }
  return {ok, std::to_string(points) + " points, ratio under h-halving from h = 4e-3:" + detail};
}

Outcome moebius_invariance() {
  std::mt19937_64 rng(31);
  std::vector<ChartPtr> charts = {get_entry("veronese_s4").chart(), get_entry("hopf_veronese_s5").chart(),
                                  get_entry("clifford_torus_s3_in_s4").chart()};
  charts.push_back(random_trig_chart(3, 2, rng));
  double ddef = 0.0, dnorm = 0.0;
  int flips = 0;
  for (int t = 0; t < 50; ++t) {
    const ChartPtr& chart = charts[static_cast<std::size_t>(t) % charts.size()];
    const Eigen::MatrixXd T = random_lorentz_transform(chart->ambient_dim() + 1, rng, 0.5);
    const TransformedChart moved(chart, T);
    const auto u = sample(shrink(chart->domain(), 0.1), rng);
    const DdvvReport a = ddvv_report(fundamental_forms(*chart, u));
    const DdvvReport b = ddvv_report(fundamental_forms(moved, u));
    ddef = std::max(ddef, std::abs(a.deficit / a.rho_sq - b.deficit / b.rho_sq));
    dnorm = std::max(dnorm, std::abs(build_frame(*chart, u).B_norm_sq() - build_frame(moved, u).B_norm_sq()));
    if (is_wintgen_ideal(a, 1e-6) != is_wintgen_ideal(b, 1e-6)) ++flips;
  }
  return {ddef <= 1e-6 && dnorm <= 1e-6 && flips == 0,
          "50 transforms, max change of deficit/rho^2 " + sci(ddef) + ", of |B|^2 " + sci(dnorm) +
              ", classification changes " + std::to_string(flips)};
}

Outcome certificates() {
  struct Case {
    ChartPtr chart;
    std::vector<double> u;
  };
  const std::vector<Case> cases = {{get_entry("veronese_s4").chart(), {1.0, 0.8}},
                                   {get_entry("veronese_s4").chart(), {2.0, 4.1}},
                                   {get_entry("hopf_veronese_s5").chart(), {0.3, -0.2, 0.5}},
                                   {get_entry("hopf_veronese_s5").chart(), {-0.4, 0.1, 2.0}},
                                   {get_entry("helicoid_seed_m3").chart(), {0.2, 0.3, 1.0}}};
  const double h = 1e-3;
  const double steps[] = {4 * h, 2 * h, h};
  double sdev = 0.0, tension = 0.0, circle = 0.0, rlo = 1e9, rhi = 0.0;
  bool ranks = true;
  for (const auto& c : cases) {
    const ConvergenceStudy st = convergence_study(*c.chart, c.u, steps);
    const GaussMapCertificate& g = st.runs.back();
    ranks = ranks && g.canonical_frame && g.rank(10 * h) == 2;
    sdev = std::max({sdev, std::abs(g.singular_values[0] - std::sqrt(2.0)), std::abs(g.singular_values[1] - std::sqrt(2.0))});
    tension = std::max(tension, g.tension_norm);
    circle = std::max(circle, g.ellipse.circle_residual);
    for (double r : st.tension_ratios) rlo = std::min(rlo, r), rhi = std::max(rhi, r);
    for (double r : st.circle_ratios) rlo = std::min(rlo, r), rhi = std::max(rhi, r);
  }
  const bool ok = ranks && sdev <= 1e-3 && tension <= 1e-4 && circle <= 1e-4 && rlo >= 3.5 && rhi <= 4.5;
  return {ok, std::to_string(cases.size()) + " points, rank 2: " + (ranks ? "yes" : "no") + ", max |sigma - sqrt 2| " +
                  sci(sdev) + ", tension " + sci(tension) + ", circle " + sci(circle) + ", halving ratios " +
                  fmt("%.3f", rlo) + ".." + fmt("%.3f", rhi)};
}

Outcome generator() {
  const WeierstrassSeed seed = WeierstrassSeed::from_json(get_entry("helicoid_seed_m3").document["seed"]);
  auto curve = std::make_shared<IsotropicCurve>(curve_from_weierstrass(seed));
  auto chart = envelope_to_chart(curve);
  std::mt19937_64 rng(8);
  std::vector<std::vector<double>> pts;
  for (int k = 0; k < 60; ++k) pts.push_back(sample(shrink(chart->domain(), 0.02), rng));
  const RegularityFlags flags = classify_regularity(*chart, pts);
  int ideal = 0;
  double worst = 0.0, mcs = 0.0, fiber = 0.0;
  for (const auto& u : flags.regular) {
    const DdvvReport r = ddvv_report(fundamental_forms(*chart, u));
    if (is_wintgen_ideal(r, 1e-6)) ++ideal;
    worst = std::max(worst, std::abs(r.deficit));
    mcs = std::max(mcs, mean_curvature_sphere_residual(*chart, u, 1e-3));
    std::vector<Eigen::VectorXd> ring;
    for (const auto& s : build_envelope(*curve, u[0], u[1], 24)) ring.push_back(s.point);
    fiber = std::max(fiber, sphere_fit_residual(ring, 2));
  }
  const bool ok = ideal >= 50 && ideal == static_cast<int>(flags.regular.size()) && fiber <= 1e-8 && mcs <= 1e-4;
  return {ok, std::to_string(ideal) + " of " + std::to_string(flags.regular.size()) + " regular points ideal (" +
                  std::to_string(flags.singular.size()) + " singular), max |deficit| " + sci(worst) +
                  ", fiber sphericity " + sci(fiber) + ", mean curvature sphere residual " + sci(mcs)};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism() {
  namespace fs = std::filesystem;
  const fs::path root = fs::temp_directory_path() / "wintgen_kit_acceptance";
  fs::remove_all(root);
  std::vector<RunConfig> runs;
  RunConfig c;
  c.command = "check";
  c.catalog = "veronese_s4";
  runs.push_back(c);
  c.command = "invariants";
  c.catalog = "hopf_veronese_s5";
  c.grid = {2, 2, 2};
  c.rng_seed = 17;
  runs.push_back(c);
  c.command = "gaussmap";
  runs.push_back(c);
  c.command = "construct";
  c.catalog = "helicoid_seed_m3";
  c.grid = {5, 4, 4};
  runs.push_back(c);
  // a fuzz chart written to disk, read back by path
  std::mt19937_64 rng(4);
  fs::create_directories(root);
  std::ofstream(root / "fuzz.json") << random_trig_chart(3, 2, rng)->to_json().dump();
  RunConfig f;
  f.command = "check";
  f.chart_path = (root / "fuzz.json").string();
  f.grid = {3, 3, 3};
  runs.push_back(f);

  int files = 0;
  for (std::size_t k = 0; k < runs.size(); ++k) {
    const fs::path a = root / ("a" + std::to_string(k)), b = root / ("b" + std::to_string(k));
    RunConfig ra = runs[k], rb = runs[k];
    ra.out_dir = a;
    ra.threads = 1;
    rb.out_dir = b;
    rb.threads = 3;
    run_command(ra);
    run_command(rb);
    for (const auto& e : fs::directory_iterator(a)) {
      ++files;
      if (slurp(e.path()) != slurp(b / e.path().filename()))
        return {false, runs[k].command + " output " + e.path().filename().string() + " differs between runs"};
    }
  }
  fs::remove_all(root);
  return {files >= 10, std::to_string(runs.size()) + " commands run twice with 1 and 3 workers, " + std::to_string(files) +
                           " output files byte-identical"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"DDVV inequality fuzzing", fuzz_ddvv},
      {"equality case", equality_case},
      {"canonical form fit", canonical_form},
      {"Moebius frame identities", frame_identities},
      {"integrability convergence", integrability},
      {"Moebius invariance", moebius_invariance},
      {"conformal Gauss map certificates", certificates},
      {"envelope generator round trip", generator},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failed;
    std::printf("%s criterion %zu (%s): %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(),
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
