#pragma once

#include <array>
#include <string>

#include "euler2c/bifurcation.hpp"

namespace euler2c {

enum class ReferenceChoice { KeplerAtO1, KeplerAtO2, SelfReference };

std::string to_string(ReferenceChoice r);
/// Accepts "o1", "o2", "self" and the enumerator names.
ReferenceChoice parse_reference(const std::string& s);

/// Strength of the reference Kepler center (mu1 - mu2 at o1, mu2 - mu1 at o2).
double reference_strength(const Params& P, ReferenceChoice r);
/// Strength entering the reference system's xi-equation.
double reference_xi_strength(const Params& P, ReferenceChoice r);

/// Turning points in a = 1 units. For eta: the oscillation interval [eta_-, eta_+]
/// (the unique allowed component). For xi: [xi_min, +inf), the unbounded component.
/// Throws NonPhysicalError if absent and CriticalValueError on a double root.
Interval turning_points(Coordinate kind, const InvariantPoint& f, double strength);

struct ActionTriple {
  double I_phi = 0.0;
  double I_eta = 0.0;
  double I_xi_mod = 0.0;
  double err_eta = 0.0;
  double err_xi = 0.0;
};

struct ActionValue {
  double value = 0.0;
  double error = 0.0;
};

/// (1/pi) * integral of |p_eta| over the oscillation interval.
ActionValue action_I_eta(const InvariantPoint& f, const Params& P);

/// Default cutoff 10 * max(1, xi_min of the original, xi_min of the reference).
double default_cutoff(const InvariantPoint& f, const Params& P, ReferenceChoice ref);

/// Regularised xi-action relative to a reference; R <= 0 selects the default cutoff.
ActionValue action_I_xi_mod(const InvariantPoint& f, const Params& P, ReferenceChoice ref, double R = 0.0);

ActionTriple actions(const InvariantPoint& f, const Params& P, ReferenceChoice ref, double R = 0.0);

/// Smooth step: 0 below R, 1 above R + 1.
double cutoff_bump(double xi, double R);

enum class ActionKind { Eta, XiMod };

struct DlLimit {
  /// one-sided limit of dI/dl as l -> 0+
  double value = 0.0;
  /// central differences at l = eps, 2 eps, 4 eps
  std::array<double, 3> derivatives{};
  /// first-order Richardson extrapolants from the two finest pairs
  std::array<double, 2> extrapolants{};
  bool converged = false;
};

inline constexpr double kDlEpsilon = 1e-4;
inline constexpr double kDlConvergence = 1e-3;

DlLimit dl_limit(ActionKind kind, double h, double g, const Params& P, ReferenceChoice ref,
                 double eps = kDlEpsilon);

}  // namespace euler2c
