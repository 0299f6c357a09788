#include <cmath>
#include <numbers>
#include <ostream>

#include "cli.hpp"
#include "euler2c/actions.hpp"
#include "euler2c/bifurcation.hpp"
#include "euler2c/dynamics.hpp"
#include "euler2c/kepler.hpp"
#include "euler2c/knauf.hpp"
#include "euler2c/monodromy.hpp"
#include "euler2c/scattering.hpp"
#include "euler2c/trajectory.hpp"

namespace euler2c::cli {

namespace {

ReferenceChoice parse_ref(const std::string& s) {
  try {
    return parse_reference(s);
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
}

Vec3 parse_vec(const std::string& s) {
  const auto v = parse_list(s, 3);
  return {v[0], v[1], v[2]};
}

nlohmann::json vec_json(const Vec3& v) { return {v.x(), v.y(), v.z()}; }

Output knauf_sweep(const ScatterOptions& o) {
  PlanarPotential V;
  try {
    V = make_potential(o.knauf, o.strength);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (!(o.h > 0.0)) throw ConfigError("--h must be positive for the degree sweep");
  Output out;
  out.columns = {"impact", "outgoing"};
  out.diagnostics["potential"] = V.name;
  out.diagnostics["sup_V"] = V.sup;
  try {
    const KnaufSweep k = knauf_degree_planar(V, o.h, o.direction, o.samples > 0 ? o.samples : kKnaufSamples);
    for (std::size_t i = 0; i < k.impact.size(); ++i) out.rows.push_back({k.impact[i], k.outgoing[i]});
    out.notes.push_back("degree " + std::to_string(k.degree));
    out.notes.push_back("samples " + std::to_string(k.base_samples) + " refined " + std::to_string(k.refined_samples));
    out.results_extra["degree"] = k.degree;
    out.diagnostics["status"] = "ok";
    out.diagnostics["base_samples"] = k.base_samples;
    out.diagnostics["refined_samples"] = k.refined_samples;
  } catch (const TrappingError& e) {
    out.notes.push_back(std::string("status trapped: ") + e.what());
    out.diagnostics["status"] = "trapped";
  }
  return out;
}

Output loop_deflection(const Common& c, const ScatterOptions& o) {
  const Params P = c.params();
  const ReferenceChoice ref = parse_ref(o.ref);
  if (o.deflection_loop.size() != 6 || o.deflection_loop.rfind("gamma", 0) != 0)
    throw ConfigError("--deflection-loop must be gamma1, gamma2 or gamma3");
  const int idx = o.deflection_loop[5] - '0';
  if (idx < 1 || idx > 3) throw ConfigError("--deflection-loop must be gamma1, gamma2 or gamma3");
  if (o.points < 4) throw ConfigError("--points must be at least 4");
  const LoopPath loop = make_loop(P, o.h, critical_lines(P)[idx - 1].offset, ref);
  const LoopDeflection d = deflection_loop_variation(loop, P, ref, o.points, o.theta);

  Output out;
  out.columns = {"k", "t", "h", "l", "g", "delta_phi"};
  for (std::size_t k = 0; k < d.params.size(); ++k)
    out.rows.push_back({(long long)k, d.params[k], d.points[k].h, d.points[k].l, d.points[k].g, d.differences[k]});
  out.notes.push_back("variation " + format_double(d.variation));
  out.notes.push_back("variation_over_2pi " + format_double(d.variation / (2.0 * std::numbers::pi)));
  out.notes.push_back("max_error " + format_double(d.max_error));
  out.results_extra["variation"] = d.variation;
  out.results_extra["variation_over_2pi"] = d.variation / (2.0 * std::numbers::pi);
  out.diagnostics["max_error"] = d.max_error;
  out.diagnostics["loop"] = {{"h", loop.h}, {"g_a", loop.g_a}, {"g_b", loop.g_b}, {"dl", loop.dl}};
  return out;
}

Output random_deflections(const Common& c, const ScatterOptions& o) {
  const Params P = c.params();
  const ReferenceChoice ref = parse_ref(o.ref);
  Output out;
  out.columns = {"index", "px", "py", "pz", "qx", "qy", "qz", "outcome", "delta_phi", "error"};
  const auto samples = random_incoming(c.seed, o.random);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& in = samples[i];
    Row r{(long long)i, in.p_in.x(), in.p_in.y(), in.p_in.z(), in.q_line.x(), in.q_line.y(), in.q_line.z()};
    try {
      const DeflectionResult d = deflection_difference(in, P, ref);
      r.insert(r.end(), {std::string(d.converged ? "escaped" : "unconverged"), d.value, d.error});
    } catch (const CollisionError&) {
      r.insert(r.end(), {std::string("collision"), std::nan(""), std::nan("")});
    } catch (const TrappingError&) {
      r.insert(r.end(), {std::string("trapped"), std::nan(""), std::nan("")});
    }
    out.rows.push_back(std::move(r));
  }
  return out;
}

void append_samples(Output& out, const Trajectory& tr, const Params& P, bool reversed, bool skip_first) {
  const std::size_t n = tr.samples.size();
  for (std::size_t j = skip_first ? 1 : 0; j < n; ++j) {
    const auto& smp = tr.samples[reversed ? n - 1 - j : j];
    InvariantPoint F{std::nan(""), std::nan(""), std::nan("")};
    try {
      F = eval_integrals(smp.s, P);
    } catch (const CollisionError&) {
    }
    out.rows.push_back({smp.t, smp.s.q.x(), smp.s.q.y(), smp.s.q.z(), smp.s.p.x(), smp.s.p.y(), smp.s.p.z(), F.h,
                        F.l, F.g});
  }
}

void asymptote_info(Output& out, const Trajectory& tr, int side, const Params& P) {
  const char* key = side < 0 ? "asymptote_in" : "asymptote_out";
  if (tr.reason != Termination::RadiusReached) {
    out.results_extra[key] = nullptr;
    return;
  }
  const Asymptote as = extract_asymptote(tr, side, P.sum());
  out.results_extra[key] = {{"p_hat", vec_json(as.p_hat)}, {"q_perp", vec_json(as.q_perp)},
                            {"radius", as.radius}, {"error", as.error}};
  out.notes.push_back(std::string(key) + " p_hat " + format_double(as.p_hat.x()) + " " +
                      format_double(as.p_hat.y()) + " " + format_double(as.p_hat.z()));
}

Output trajectory(const Common& c, const ScatterOptions& o) {
  const Params P = c.params();
  if (!(o.r_max > 0.0) || !(o.t_max > 0.0) || !(o.tol > 0.0)) throw ConfigError("--t-max, --r-max, --tol must be positive");
  StopCondition stop;
  stop.t_max = o.t_max;
  stop.r_max = o.r_max;
  stop.tol = o.tol;

  Output out;
  out.columns = {"t", "x", "y", "z", "px", "py", "pz", "h", "l", "g"};
  PhaseState s0;
  bool have_incoming = false;
  IncomingData in;
  if (!o.fiber.empty()) {
    const Vec3 f = parse_vec(o.fiber);
    try {
      in = incoming_for_invariants({f.x(), f.y(), f.z()}, P, o.theta);
    } catch (const std::exception& e) {
      throw ConfigError(e.what());
    }
    have_incoming = true;
    const KeplerOrbit tail = KeplerOrbit::from_incoming(P.sum(), Vec3::Zero(), in.p_in, in.q_line);
    s0 = kepler_solve(tail, kepler_time_at_radius(tail, 0.5 * o.r_max, -1));
  } else {
    if (o.q.empty() || o.p.empty()) throw ConfigError("scatter needs --q and --p, --fiber, --knauf, --deflection-loop or --random");
    s0.q = parse_vec(o.q);
    s0.p = parse_vec(o.p);
  }
  try {
    eval_integrals(s0, P);
  } catch (const CollisionError& e) {
    throw ConfigError(e.what());
  }

  StopCondition back = stop;
  back.t_max = -stop.t_max;
  const Trajectory bwd = have_incoming ? Trajectory{} : integrate(s0, P, back);
  const Trajectory fwd = integrate(s0, P, stop);
  if (!have_incoming) append_samples(out, bwd, P, true, false);
  append_samples(out, fwd, P, false, !have_incoming);

  out.notes.push_back(std::string("termination_forward ") + to_string(fwd.reason));
  out.diagnostics["termination_forward"] = to_string(fwd.reason);
  if (!have_incoming) {
    out.notes.push_back(std::string("termination_backward ") + to_string(bwd.reason));
    out.diagnostics["termination_backward"] = to_string(bwd.reason);
    asymptote_info(out, bwd, -1, P);
  }
  asymptote_info(out, fwd, 1, P);

  const InvariantPoint F = eval_integrals(s0, P);
  if (!have_incoming && F.h > 0.0 && bwd.reason == Termination::RadiusReached) {
    const Asymptote as = extract_asymptote(bwd, -1, P.sum());
    in = {as.p_hat, as.q_perp};
    have_incoming = fwd.reason == Termination::RadiusReached;
  }
  if (have_incoming && fwd.reason != Termination::Collision) {
    try {
      const DeflectionResult d = deflection_difference(in, P, parse_ref(o.ref));
      out.results_extra["deflection_difference"] = {{"value", d.value}, {"error", d.error}, {"converged", d.converged}};
      out.notes.push_back("deflection_difference " + format_double(d.value));
    } catch (const std::runtime_error& e) {
      out.results_extra["deflection_difference"] = nullptr;
      out.notes.push_back(std::string("deflection_difference unavailable: ") + e.what());
    }
  }
  return out;
}

}  // namespace

int run_scatter(const Common& c, const ScatterOptions& o, std::ostream& console) {
  nlohmann::json config = c.to_json();
  config["command"] = "scatter";
  config["ref"] = o.ref;
  Output out;
  if (!o.knauf.empty()) {
    config["knauf"] = o.knauf;
    config["h"] = o.h;
    config["strength"] = o.strength;
    config["direction"] = o.direction;
    config["samples"] = o.samples;
    out = knauf_sweep(o);
  } else if (!o.deflection_loop.empty()) {
    config["deflection_loop"] = o.deflection_loop;
    config["points"] = o.points;
    config["h"] = o.h;
    config["theta"] = o.theta;
    out = loop_deflection(c, o);
  } else if (o.random > 0) {
    config["random"] = o.random;
    out = random_deflections(c, o);
  } else {
    config["q"] = o.q;
    config["p"] = o.p;
    config["fiber"] = o.fiber;
    config["theta"] = o.theta;
    config["t_max"] = o.t_max;
    config["r_max"] = o.r_max;
    config["tol"] = o.tol;
    out = trajectory(c, o);
  }
  emit(c, "scatter", "", config, out, console);
  return kOk;
}

}  // namespace euler2c::cli
