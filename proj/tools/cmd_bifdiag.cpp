#include <cmath>
#include <ostream>

#include "cli.hpp"
#include "euler2c/bifurcation.hpp"

namespace euler2c::cli {

namespace {

const std::vector<std::string> kColumns{"kind", "family", "index", "param", "h", "l", "g",
                                        "physical", "scattering", "borderline"};

struct Counts {
  long long physical = 0, scattering = 0, borderline = 0;
};

Row classified_row(const std::string& kind, const std::string& family, long long index, double param,
                   const InvariantPoint& f, const Params& P, Counts* counts) {
  const PhysicalClassification c = classify(f, P);
  if (counts) {
    counts->physical += c.physical;
    counts->scattering += c.scattering;
    counts->borderline += c.borderline;
  }
  return {kind, family, index, param, f.h, f.l, f.g, (long long)c.physical, (long long)c.scattering,
          (long long)c.borderline};
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
  return v;
}

void add_curves(Output& out, const std::vector<CriticalCurve>& curves) {
  for (std::size_t k = 0; k < curves.size(); ++k)
    for (const auto& s : curves[k].samples)
      out.rows.push_back({std::string("curve"), curves[k].family, (long long)k, s.param, s.f.h, s.f.l, s.f.g,
                          (long long)s.physical, 0LL, 0LL});
}

void add_notes(Output& out, const Counts& n, const std::string& slice) {
  out.notes.push_back("slice " + slice);
  out.notes.push_back("physical_rows " + std::to_string(n.physical));
  out.notes.push_back("scattering_rows " + std::to_string(n.scattering));
  out.notes.push_back("borderline_rows " + std::to_string(n.borderline));
  out.diagnostics["slice"] = slice;
  out.diagnostics["physical_rows"] = n.physical;
  out.diagnostics["scattering_rows"] = n.scattering;
  out.diagnostics["borderline_rows"] = n.borderline;
}

Output spatial_slice(const Params& P, double h, const BifdiagOptions& o, std::vector<double> g_range) {
  Output out;
  out.columns = kColumns;
  for (const auto& line : critical_lines(P))
    out.rows.push_back(classified_row("line", "l", line.index, 0.0, {h, 0.0, h + line.offset}, P, nullptr));
  CurveSampling cs;
  cs.count = o.curve_samples;
  add_curves(out, critical_curves_spatial(P, h, cs));
  Counts counts;
  for (double l : linspace(o.l_range[0], o.l_range[1], o.grid))
    for (double g : linspace(g_range[0], g_range[1], o.grid))
      out.rows.push_back(classified_row("grid", "", 0, 0.0, {h, l, g}, P, &counts));
  add_notes(out, counts, "h=" + format_double(h));
  return out;
}

Output planar_slice(const Params& P, const BifdiagOptions& o, std::vector<double> g_range) {
  Output out;
  out.columns = kColumns;
  for (const auto& line : critical_lines(P))
    for (int e = 0; e < 2; ++e) {
      const double h = o.h_range[e];
      out.rows.push_back(classified_row("line", "l", line.index, e, {h, 0.0, h + line.offset}, P, nullptr));
    }
  CurveSampling cs;
  cs.count = o.curve_samples;
  add_curves(out, critical_curves_planar(P, cs));
  Counts counts;
  for (double h : linspace(o.h_range[0], o.h_range[1], o.grid))
    for (double g : linspace(g_range[0], g_range[1], o.grid))
      out.rows.push_back(classified_row("grid", "", 0, 0.0, {h, 0.0, g}, P, &counts));
  add_notes(out, counts, "l=0");
  return out;
}

}  // namespace

int run_bifdiag(const Common& c, const BifdiagOptions& o, std::ostream& console) {
  const Params P = c.params();
  if (o.grid < 2 || o.curve_samples < 2) throw ConfigError("--grid and --curve-samples must be at least 2");
  if (o.l_range.size() != 2 || o.h_range.size() != 2 || !(o.l_range[0] < o.l_range[1]) ||
      !(o.h_range[0] < o.h_range[1]))
    throw ConfigError("invalid range");
  if (!o.g_range.empty() && (o.g_range.size() != 2 || !(o.g_range[0] < o.g_range[1])))
    throw ConfigError("invalid --g-range");
  const double span = 2.0 * (std::abs(P.mu1) + std::abs(P.mu2)) * P.a + 2.0;

  nlohmann::json config = c.to_json();
  config["command"] = "bifdiag";
  config["plane"] = o.plane;
  config["grid"] = o.grid;
  config["curve_samples"] = o.curve_samples;
  config["l_range"] = o.l_range;
  config["h_range"] = o.h_range;
  config["g_range"] = o.g_range;

  if (o.plane == "planar") {
    auto g_range = o.g_range.empty() ? std::vector<double>{o.h_range[0] - span, o.h_range[1] + span} : o.g_range;
    emit(c, "bifdiag", "", config, planar_slice(P, o, g_range), console);
    return kOk;
  }
  if (o.plane != "spatial") throw ConfigError("--plane must be planar or spatial");
  if (o.energies.empty()) throw ConfigError("--h needs at least one energy");
  config["energies"] = o.energies;
  for (std::size_t k = 0; k < o.energies.size(); ++k) {
    const double h = o.energies[k];
    auto g_range = o.g_range.empty() ? std::vector<double>{h - span, h + span} : o.g_range;
    const std::string tag = o.energies.size() > 1 ? "slice" + std::to_string(k + 1) : "";
    emit(c, "bifdiag", tag, config, spatial_slice(P, h, o, g_range), console);
  }
  return kOk;
}

}  // namespace euler2c::cli
