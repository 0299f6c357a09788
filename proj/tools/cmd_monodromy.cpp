#include <cmath>
#include <ostream>

#include "cli.hpp"
#include "euler2c/actions.hpp"
#include "euler2c/monodromy.hpp"

namespace euler2c::cli {

namespace {

const std::vector<std::string> kColumns{
    "case",  "label",   "reference", "mu1",    "mu2",    "a",      "h",        "g_a",      "g_b",
    "dl",    "m_raw",   "n_raw",     "m",      "n",      "residual", "reliable", "J_xi_a", "J_xi_b",
    "J_eta_a", "J_eta_b"};

struct StrengthCase {
  std::string name;
  double mu1, mu2;
};

// One representative per strength configuration distinguished in the table.
const std::vector<StrengthCase> kTableCases{
    {"generic", 2.0, 1.0},        {"antisymmetric", 1.0, -1.0}, {"symmetric-attractive", 1.0, 1.0},
    {"symmetric-repulsive", -1.0, -1.0}, {"free", 0.0, 0.0},    {"mu2-zero", 1.0, 0.0},
    {"mu1-negative-mu2-zero", -1.0, 0.0}};

LoopShape parse_shape(const std::string& s) {
  if (s == "ellipse") return LoopShape::Ellipse;
  if (s == "rectangle") return LoopShape::Rectangle;
  if (s == "diamond") return LoopShape::Diamond;
  throw ConfigError("--shape must be ellipse, rectangle or diamond");
}

ReferenceChoice parse_ref(const std::string& s) {
  try {
    return parse_reference(s);
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
}

nlohmann::json matrix_json(const Mat3i& M) {
  nlohmann::json m = nlohmann::json::array();
  for (int i = 0; i < 3; ++i) m.push_back({M(i, 0), M(i, 1), M(i, 2)});
  return m;
}

struct Collector {
  Output out;
  bool all_reliable = true;

  void add(const std::string& name, const std::string& label, const Params& P, const MonodromyResult& r) {
    all_reliable = all_reliable && r.reliable;
    const auto& L = r.loop;
    out.rows.push_back({name, label, to_string(r.reference), P.mu1, P.mu2, P.a, L.h, L.g_a, L.g_b, L.dl,
                        r.m_raw, r.n_raw, (long long)r.m(), (long long)r.n(), r.residual,
                        (long long)r.reliable, r.jumps[0], r.jumps[1], r.jumps[2], r.jumps[3]});
    out.results_extra["matrices"].push_back(
        {{"case", name}, {"label", label}, {"reference", to_string(r.reference)}, {"matrix", matrix_json(r.matrix)}});
  }
};

double default_energy(const Params& P) { return 2.0 * (std::abs(P.mu1) + std::abs(P.mu2)) + 1.0; }

}  // namespace

int run_monodromy(const Common& c, const MonodromyOptions& o, std::ostream& console) {
  const ReferenceChoice ref = parse_ref(o.ref);
  Collector col;
  col.out.columns = kColumns;
  col.out.results_extra["matrices"] = nlohmann::json::array();

  nlohmann::json config = c.to_json();
  config["command"] = "monodromy";
  config["ref"] = to_string(ref);
  config["h"] = o.h;
  config["loops"] = o.loops;

  auto select = [&](const std::string& label) {
    if (o.loops.empty()) return true;
    for (const auto& l : o.loops)
      if (l == label) return true;
    return false;
  };

  if (c.preset == "table1") {
    for (ReferenceChoice r : {ReferenceChoice::KeplerAtO1, ReferenceChoice::KeplerAtO2}) {
      for (const auto& tc : kTableCases) {
        const Params P(tc.mu1, tc.mu2, c.a);
        const double h = o.h > 0.0 ? o.h : default_energy(P);
        for (const auto& e : table1(P, r, h))
          if (select(e.label)) col.add(tc.name, e.label, P, e.result);
      }
    }
  } else if (o.dl > 0.0) {
    const Params P = c.params();
    LoopPath loop;
    loop.h = o.h > 0.0 ? o.h : 1.0;
    loop.g_a = o.g_a;
    loop.g_b = o.g_b;
    loop.dl = o.dl;
    loop.shape = parse_shape(o.shape);
    loop.orientation = o.orientation >= 0 ? 1 : -1;
    config["loop"] = {{"g_a", o.g_a}, {"g_b", o.g_b}, {"dl", o.dl}, {"shape", o.shape}, {"orientation", loop.orientation}};
    col.add("custom", "custom", P, monodromy_matrix(loop, P, ref));
  } else {
    const Params P = c.params();
    const double h = o.h > 0.0 ? o.h : default_energy(P);
    const auto entries = table1(P, ref, h);
    for (const auto& l : o.loops) {
      bool found = false;
      for (const auto& e : entries) found = found || e.label == l;
      if (!found) throw ConfigError("no loop '" + l + "' for these strengths");
    }
    for (const auto& e : entries)
      if (select(e.label)) col.add(c.preset.empty() ? "custom" : c.preset, e.label, P, e.result);
  }

  col.out.diagnostics["all_reliable"] = col.all_reliable;
  col.out.diagnostics["residual_limit"] = kResidualLimit;
  emit(c, "monodromy", "", config, col.out, console);
  return col.all_reliable ? kOk : kUnreliable;
}

}  // namespace euler2c::cli
