#include <CLI11.hpp>

#include <ostream>

#include "cli.hpp"
#include "euler2c/io.hpp"

namespace euler2c::cli {

namespace {

struct CommonFlags {
  CLI::Option* mu1 = nullptr;
  CLI::Option* mu2 = nullptr;
};

CommonFlags add_common(CLI::App* app, Common& c) {
  CommonFlags f;
  f.mu1 = app->add_option("--mu1", c.mu1, "strength of the center at z = -a");
  f.mu2 = app->add_option("--mu2", c.mu2, "strength of the center at z = +a");
  app->add_option("--a", c.a, "half-separation of the centers");
  app->add_option("--preset", c.preset, "named reproduction preset");
  app->add_option("--out", c.out, "output file ('-' for standard output)");
  app->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app->add_option("--seed", c.seed, "seed for randomized sampling");
  return f;
}

void set_strengths(Common& c, const CommonFlags& f, double mu1, double mu2) {
  if (!f.mu1->count()) c.mu1 = mu1;
  if (!f.mu2->count()) c.mu2 = mu2;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& console, std::ostream& errors) {
  CLI::App app{"Euler two-center problem: bifurcation diagrams, monodromy and scattering"};
  app.set_help_flag("--help", "print this help and exit");
  app.set_version_flag("--version", library_version());
  app.set_config("--config", "", "INI file with [bifdiag], [monodromy] or [scatter] sections");
  app.require_subcommand(1);

  Common common;
  BifdiagOptions bo;
  MonodromyOptions mo;
  ScatterOptions so;

  auto* bif = app.add_subcommand("bifdiag", "critical set and classification grid on a slice");
  const auto bif_flags = add_common(bif, common);
  auto* bif_plane = bif->add_option("--plane", bo.plane, "planar (h,g) plane at l = 0 or spatial (l,g) slice");
  auto* bif_h = bif->add_option("--h", bo.energies, "energies of the spatial slices")->delimiter(',');
  bif->add_option("--h-range", bo.h_range, "h range of the planar slice")->delimiter(',')->expected(2);
  bif->add_option("--l-range", bo.l_range, "l range of the spatial slice")->delimiter(',')->expected(2);
  bif->add_option("--g-range", bo.g_range, "g range (default spans the critical lines)")->delimiter(',')->expected(2);
  bif->add_option("--grid", bo.grid, "grid points per axis");
  bif->add_option("--curve-samples", bo.curve_samples, "samples per critical curve");

  auto* mon = app.add_subcommand("monodromy", "scattering or Hamiltonian monodromy around critical lines");
  const auto mon_flags = add_common(mon, common);
  auto* mon_ref = mon->add_option("--ref", mo.ref, "reference: o1, o2 or self");
  auto* mon_h = mon->add_option("--h", mo.h, "energy of the loops (default 2(|mu1|+|mu2|)+1)");
  mon->add_option("--loop", mo.loops, "loop labels, e.g. gamma1,gamma3 or gamma1gamma2")->delimiter(',');
  mon->add_option("--g-a", mo.g_a, "custom loop: left crossing of l = 0");
  mon->add_option("--g-b", mo.g_b, "custom loop: right crossing of l = 0");
  mon->add_option("--dl", mo.dl, "custom loop: half-height in l");
  mon->add_option("--shape", mo.shape, "custom loop: ellipse, rectangle or diamond");
  mon->add_option("--orientation", mo.orientation, "custom loop: +1 or -1");

  auto* sca = app.add_subcommand("scatter", "trajectories, deflection angles and degree sweeps");
  add_common(sca, common);
  sca->add_option("--q", so.q, "initial position x,y,z");
  sca->add_option("--p", so.p, "initial momentum px,py,pz");
  sca->add_option("--fiber", so.fiber, "invariants h,l,g selecting an incoming asymptote");
  sca->add_option("--theta", so.theta, "polar angle of the incoming direction");
  sca->add_option("--t-max", so.t_max, "integration time in each direction");
  sca->add_option("--r-max", so.r_max, "escape radius");
  sca->add_option("--tol", so.tol, "integrator tolerance");
  sca->add_option("--ref", so.ref, "reference for deflection differences: o1, o2 or self");
  sca->add_option("--knauf", so.knauf, "planar potential for the degree sweep: zero, gaussian, tabulated:<csv>");
  sca->add_option("--h", so.h, "energy of the sweep or loop");
  sca->add_option("--strength", so.strength, "amplitude of the built-in potential");
  sca->add_option("--direction", so.direction, "incoming direction angle of the sweep");
  sca->add_option("--samples", so.samples, "base samples of the sweep");
  sca->add_option("--deflection-loop", so.deflection_loop, "gamma1, gamma2 or gamma3");
  sca->add_option("--points", so.points, "loop samples for the deflection variation");
  sca->add_option("--random", so.random, "number of random incoming asymptotes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    app.exit(e, console, errors);
    return kOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, console, errors);
    return kConfigError;
  }

  try {
    if (bif->parsed()) {
      if (common.format.empty()) common.format = "csv";
      if (common.preset == "fig1") {
        set_strengths(common, bif_flags, 2.0, 1.0);
        if (!bif_plane->count()) bo.plane = "spatial";
        if (!bif_h->count()) bo.energies = {0.25, 1.0, 4.0};
      } else if (common.preset == "appendixB-free") {
        set_strengths(common, bif_flags, 0.0, 0.0);
        if (!bif_plane->count()) bo.plane = "spatial";
      } else if (!common.preset.empty()) {
        throw ConfigError("unknown bifdiag preset '" + common.preset + "'");
      }
      return run_bifdiag(common, bo, console);
    }
    if (mon->parsed()) {
      if (common.format.empty()) common.format = "json";
      if (common.preset == "thm62" || common.preset == "hamiltonian") {
        set_strengths(common, mon_flags, 2.0, 1.0);
        if (!mon_ref->count()) mo.ref = common.preset == "thm62" ? "o2" : "self";
        if (!mon_h->count()) mo.h = 1.0;
      } else if (!common.preset.empty() && common.preset != "table1") {
        throw ConfigError("unknown monodromy preset '" + common.preset + "'");
      }
      return run_monodromy(common, mo, console);
    }
    if (common.format.empty()) common.format = "csv";
    if (!common.preset.empty()) throw ConfigError("scatter has no presets");
    return run_scatter(common, so, console);
  } catch (const ConfigError& e) {
    errors << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    errors << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::domain_error& e) {
    errors << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    errors << "numerical failure: " << e.what() << "\n";
    return kUnreliable;
  }
}

}  // namespace euler2c::cli
