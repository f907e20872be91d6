#include "wintgen/catalog.hpp"

#include <cmath>
#include <cstdio>
#include <map>

#include "wintgen/envelope.hpp"
#include "wintgen/errors.hpp"

namespace wintgen {

namespace {

nlohmann::json expr_doc(const std::string& name, int m, int p, const std::vector<std::pair<double, double>>& box,
                        const std::vector<std::string>& comps) {
  nlohmann::json dom = nlohmann::json::array();
  for (auto [lo, hi] : box) dom.push_back({lo, hi});
  return {{"kind", "expression"}, {"name", name}, {"dim_m", m}, {"codim_p", p}, {"domain", dom}, {"components", comps}};
}

std::map<std::string, CatalogEntry> build_registry() {
  std::map<std::string, CatalogEntry> reg;
  auto add = [&](CatalogEntry e) { reg.emplace(e.name, std::move(e)); };

  {
    CatalogEntry e;
    e.name = "veronese_s4";
    e.description = "Veronese surface RP^2 -> S^4, minimal with constant curvature 1/3";
    e.document = expr_doc(e.name, 2, 2, {{0.3, M_PI - 0.3}, {0.0, 2 * M_PI}},
                          {"sqrt(3)*cos(u1)*sin(u1)*sin(u2)", "sqrt(3)*cos(u1)*sin(u1)*cos(u2)",
                           "sqrt(3)*sin(u1)^2*cos(u2)*sin(u2)", "sqrt(3)/2*sin(u1)^2*(cos(u2)^2 - sin(u2)^2)",
                           "(sin(u1)^2 - 2*cos(u1)^2)/2"});
    e.expected.wintgen = true;
    e.expected.K = 1.0 / 3.0;
    e.expected.K_N = 2.0 / 3.0;
    e.expected.H_sq = 0.0;
    e.expected.deficit = 0.0;
    e.expected.origin = "finite-difference curvature oracle at 10 points";
    add(e);
  }
  {
    CatalogEntry e;
    e.name = "clifford_torus_s3_in_s4";
    e.description = "flat Clifford torus in a great S^3 of S^4, in sheared angle coordinates";
    e.document = expr_doc(e.name, 2, 2, {{-10.0, 10.0}, {-10.0, 10.0}},
                          {"cos(u1 + 0.3*sin(u2))/sqrt(2)", "sin(u1 + 0.3*sin(u2))/sqrt(2)",
                           "cos(u2 + 0.3*sin(u1))/sqrt(2)", "sin(u2 + 0.3*sin(u1))/sqrt(2)", "0"});
    e.expected.wintgen = false;
    e.expected.K = 0.0;
    e.expected.K_N = 0.0;
    e.expected.H_sq = 0.0;
    e.expected.deficit = 1.0;
    e.expected.origin = "finite-difference curvature oracle";
    add(e);
  }
  {
    CatalogEntry e;
    e.name = "totally_geodesic_s2_s4";
    e.description = "great 2-sphere, umbilic everywhere";
    e.document = expr_doc(e.name, 2, 2, {{0.3, M_PI - 0.3}, {0.0, 2 * M_PI}},
                          {"sin(u1)*cos(u2)", "sin(u1)*sin(u2)", "cos(u1)", "0", "0"});
    e.expected.wintgen = false;
    e.expected.umbilic = true;
    e.expected.K = 1.0;
    e.expected.K_N = 0.0;
    e.expected.H_sq = 0.0;
    e.expected.deficit = 0.0;
    e.expected.origin = "second fundamental form vanishes identically";
    add(e);
  }
  {
    CatalogEntry e;
    e.name = "hopf_veronese_s5";
    e.description =
        "Hopf lift of the Veronese curve CP^1 -> CP^2 in S^5; the cone over it is Wintgen ideal and the link is "
        "carried as this compact three-dimensional chart";
    const std::string d = "(1 + u1^2 + u2^2)";
    const std::string re2 = "(u1^2 - u2^2)", im2 = "(2*u1*u2)";
    e.document = expr_doc(e.name, 3, 2, {{-1.0, 1.0}, {-1.0, 1.0}, {-3.0, 3.0}},
                          {"cos(u3)/" + d, "sin(u3)/" + d, "sqrt(2)*(u1*cos(u3) - u2*sin(u3))/" + d,
                           "sqrt(2)*(u1*sin(u3) + u2*cos(u3))/" + d,
                           "(" + re2 + "*cos(u3) - " + im2 + "*sin(u3))/" + d,
                           "(" + re2 + "*sin(u3) + " + im2 + "*cos(u3))/" + d});
    e.expected.wintgen = true;
    e.expected.deficit = 0.0;
    e.expected.origin = "moving-frame computation; Gauss map certificates";
    add(e);
  }
  {
    CatalogEntry e;
    e.name = "helicoid_seed_m3";
    e.description = "helicoid null curve as Weierstrass data; the envelope is a 3-dimensional Wintgen ideal submanifold of S^5";
    e.document = {{"kind", "seed"},
                  {"seed",
                   {{"name", "helicoid"},
                    {"m", 3},
                    {"domain", {{-1.0, 1.0}, {-1.5, 1.5}}},
                    {"components", {"-i*cosh(z)", "-sinh(z)", "i*z", "0", "0"}}}}};
    e.expected.wintgen = true;
    e.expected.deficit = 0.0;
    e.expected.origin = "envelope construction, checked pointwise";
    add(e);
  }
  return reg;
}

const std::map<std::string, CatalogEntry>& registry() {
  static const std::map<std::string, CatalogEntry> reg = build_registry();
  return reg;
}

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

bool CatalogEntry::is_seed() const { return document.value("kind", std::string()) == "seed"; }

ChartPtr CatalogEntry::chart() const { return load_chart(document); }

nlohmann::json CatalogEntry::to_json() const {
  nlohmann::json ex = {{"umbilic", expected.umbilic}, {"origin", expected.origin}};
  if (expected.wintgen) ex["wintgen"] = *expected.wintgen;
  if (expected.K) ex["K"] = *expected.K;
  if (expected.K_N) ex["K_N"] = *expected.K_N;
  if (expected.H_sq) ex["H_sq"] = *expected.H_sq;
  if (expected.deficit) ex["deficit"] = *expected.deficit;
  return {{"name", name}, {"description", description}, {"document", document}, {"expected", ex}};
}

const CatalogEntry& get_entry(const std::string& name) {
  const auto& reg = registry();
  const auto it = reg.find(name);
  if (it == reg.end()) throw StructuralError("unknown catalog entry '" + name + "'");
  return it->second;
}

std::vector<std::string> catalog_names() {
  std::vector<std::string> out;
  for (const auto& [k, v] : registry()) out.push_back(k);
  return out;
}

ChartPtr load_chart(const nlohmann::json& doc) {
  if (!doc.is_object()) throw StructuralError("chart document must be a JSON object");
  const std::string kind = doc.contains("kind") && doc["kind"].is_string() ? doc["kind"].get<std::string>() : "expression";
  if (kind == "expression") return expr_chart_from_json(doc);
  if (kind == "envelope") return envelope_chart_from_json(doc);
  if (kind == "seed") {
    const nlohmann::json seed = doc.contains("seed") ? doc["seed"] : doc;
    auto curve = std::make_shared<IsotropicCurve>(curve_from_weierstrass(WeierstrassSeed::from_json(seed)));
    return envelope_to_chart(curve, doc.value("sheet", 1));
  }
  throw StructuralError("unknown chart kind '" + kind + "'");
}

std::shared_ptr<ExprChart> random_trig_chart(int m, int p, std::mt19937_64& rng) {
  if (m < 1 || p < 1) throw StructuralError("random chart needs m, p >= 1");
  std::uniform_real_distribution<double> coef(-1.0, 1.0), phase(0.0, 2 * M_PI);
  std::uniform_int_distribution<int> freq(-2, 2), terms(1, 3);
  const int n = m + p + 1;
  auto vars = [](int a) { return "u" + std::to_string(a + 1); };
  auto trig_sum = [&](double amp) {
    std::string s;
    const int t = terms(rng);
    for (int k = 0; k < t; ++k) {
      std::string arg;
      for (int a = 0; a < m; ++a) {
        int f = freq(rng);
        if (f == 0 && a == m - 1 && arg.empty()) f = 1;  // keep every term non-constant
        if (f == 0) continue;
        arg += (f > 0 ? "+" : "-") + std::to_string(std::abs(f)) + "*" + vars(a);
      }
      arg += "+" + num(phase(rng));
      s += " + " + num(amp * coef(rng)) + "*" + (k % 2 ? "cos(" : "sin(") + arg + ")";
    }
    return s;
  };
  std::vector<std::string> g;
  g.push_back("(1.5" + trig_sum(0.1) + ")");
  for (int a = 0; a < m; ++a) g.push_back("(sin(" + vars(a) + ")" + trig_sum(0.05) + ")");
  for (int r = 0; r < p; ++r) g.push_back("(" + trig_sum(1.0).substr(3) + ")");
  std::string norm = "sqrt(";
  for (int k = 0; k < n; ++k) norm += (k ? " + " : "") + g[static_cast<std::size_t>(k)] + "^2";
  norm += ")";
  std::vector<std::string> comps;
  for (const auto& c : g) comps.push_back(c + "/" + norm);
  Box box;
  box.lo.assign(static_cast<std::size_t>(m), -1.0);
  box.hi.assign(static_cast<std::size_t>(m), 1.0);
  return std::make_shared<ExprChart>("random_trig", m, p, box, comps);
}

}  // namespace wintgen
