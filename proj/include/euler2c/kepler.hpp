#pragma once

#include "euler2c/types.hpp"

namespace euler2c {

/// Hyperbolic (h > 0) Kepler orbit of H = p^2/2 - mu/|q - center|.
/// Attractive orbits (mu > 0) follow the branch bending around the focus,
/// repulsive ones the convex branch.
struct KeplerOrbit {
  double mu = 0.0;
  Vec3 center = Vec3::Zero();
  double h = 0.0;
  Vec3 L = Vec3::Zero();  // angular momentum about the center
  double e = 1.0;
  double semi_axis = 0.0;
  double mean_motion = 0.0;
  Vec3 P = Vec3::UnitX();  // periapsis direction
  Vec3 Q = Vec3::UnitY();  // L_hat x P
  double tau = 0.0;        // time of periapsis passage
  PhaseState line0;        // state at t = 0, used when mu = 0

  static KeplerOrbit from_state(double mu, const Vec3& center, const PhaseState& s0);
  /// Orbit with the given incoming momentum (norm^2 = 2h) and incoming impact vector
  /// (any point of the incoming asymptote line), periapsis at t = 0.
  static KeplerOrbit from_incoming(double mu, const Vec3& center, const Vec3& p_in, const Vec3& q_line);

  bool is_free() const { return mu == 0.0; }
  /// asymptotic unit direction of motion; side = -1 incoming, +1 outgoing
  Vec3 direction(int side) const;
};

/// Solves e sinh F -/+ F = M (attractive/repulsive) by bracketed Newton iteration.
double solve_hyperbolic_kepler(double e, double M, bool attractive);

PhaseState kepler_solve(const KeplerOrbit& orbit, double t);

/// Time at which the distance to the center equals r, before (side = -1) or after (+1) periapsis.
double kepler_time_at_radius(const KeplerOrbit& orbit, double r, int side);

struct ConicAsymptote {
  Vec3 p_hat = Vec3::Zero();   // asymptotic momentum, norm^2 = 2h
  Vec3 q_perp = Vec3::Zero();  // impact vector relative to the origin, orthogonal to p_hat
};

ConicAsymptote conic_asymptote(const KeplerOrbit& orbit, int side);

}  // namespace euler2c
