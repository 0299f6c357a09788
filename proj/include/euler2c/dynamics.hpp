#pragma once

#include <Eigen/Geometry>

#include <cmath>

#include "euler2c/types.hpp"

namespace euler2c {

/// Collision threshold as a fraction of the half-separation a.
inline constexpr double kCollisionFraction = 1e-6;

inline double collision_radius(const Params& P) { return kCollisionFraction * P.a; }

template <typename Scalar>
Scalar potential(const Vec3T<Scalar>& q, const Params& P) {
  using std::sqrt;
  const Scalar a = Scalar(P.a);
  const Scalar r1 = sqrt(q.x() * q.x() + q.y() * q.y() + (q.z() + a) * (q.z() + a));
  const Scalar r2 = sqrt(q.x() * q.x() + q.y() * q.y() + (q.z() - a) * (q.z() - a));
  return -Scalar(P.mu1) / r1 - Scalar(P.mu2) / r2;
}

/// (H, L_z, G) by the closed-form Cartesian expressions.
/// Throws CollisionError if the position is closer than `eps` to a center.
template <typename Scalar>
InvariantPoint eval_integrals(const PhaseStateT<Scalar>& s, const Params& P, double eps) {
  using std::sqrt;
  const auto& q = s.q;
  const auto& p = s.p;
  const Scalar a = Scalar(P.a);
  const Scalar rho2 = q.x() * q.x() + q.y() * q.y();
  const Scalar r1 = sqrt(rho2 + (q.z() + a) * (q.z() + a));
  const Scalar r2 = sqrt(rho2 + (q.z() - a) * (q.z() - a));
  if (r1 < Scalar(eps) || r2 < Scalar(eps)) throw CollisionError("eval_integrals: state at a center");

  const Scalar mu1 = Scalar(P.mu1), mu2 = Scalar(P.mu2);
  const Scalar H = p.squaredNorm() / Scalar(2) - mu1 / r1 - mu2 / r2;
  const Vec3T<Scalar> L = q.cross(p);
  const Scalar G = H + (L.squaredNorm() - a * a * (p.x() * p.x() + p.y() * p.y())) / Scalar(2) +
                   a * (q.z() + a) * mu1 / r1 - a * (q.z() - a) * mu2 / r2;
  return {static_cast<double>(H), static_cast<double>(L.z()), static_cast<double>(G)};
}

inline InvariantPoint eval_integrals(const PhaseState& s, const Params& P) {
  return eval_integrals(s, P, collision_radius(P));
}

/// -grad V
template <typename Scalar>
Vec3T<Scalar> force(const Vec3T<Scalar>& q, const Params& P) {
  using std::sqrt;
  const Vec3T<Scalar> d1 = q - P.center1().cast<Scalar>();
  const Vec3T<Scalar> d2 = q - P.center2().cast<Scalar>();
  const Scalar r1 = d1.norm(), r2 = d2.norm();
  return -(Scalar(P.mu1) / (r1 * r1 * r1)) * d1 - (Scalar(P.mu2) / (r2 * r2 * r2)) * d2;
}

/// Hamilton's equations: returns (dq/dt, dp/dt) = (p, -grad V).
PhaseState equations_of_motion(const PhaseState& s, const Params& P);

// Prolate ellipsoidal coordinates ------------------------------------------

/// Positions always; momenta by the cotangent lift. Throws AxisDegeneracyError
/// on the z-axis when `with_momenta` is set.
ProlateState cartesian_to_prolate(const PhaseState& s, const Params& P, bool with_momenta = true);
PhaseState prolate_to_cartesian(const ProlateState& w, const Params& P);

/// H_xi and H_eta of the separated Hamiltonian H = (H_xi + H_eta) / (xi^2 - eta^2).
double separated_h_xi(const ProlateState& w, const Params& P);
double separated_h_eta(const ProlateState& w, const Params& P);

// Separated momenta (units with a = 1) -------------------------------------

/// Strength entering each separated equation: mu1 + mu2 for xi, mu1 - mu2 for eta
/// for the original problem; callers may substitute a reference system's value.
struct SeparatedStrengths {
  double xi = 0.0;
  double eta = 0.0;
  static SeparatedStrengths of(const Params& P) { return {P.sum(), P.diff()}; }
};

/// Numerator quartic of p_xi^2 (resp. p_eta^2): (v^2-1)(2h v^2 + 2 s v - 2g) - l^2.
/// The xi and eta numerators share this form; only the strength and the domain differ.
inline double momentum_numerator(double v, const InvariantPoint& f, double s) {
  return (v * v - 1.0) * (2.0 * f.h * v * v + 2.0 * s * v - 2.0 * f.g) - f.l * f.l;
}

/// Coefficients c0..c4 of momentum_numerator as a polynomial in v.
Eigen::Matrix<double, 5, 1> momentum_numerator_coeffs(const InvariantPoint& f, double s);

/// Squared momentum p_xi^2 or p_eta^2; negative values mean classically forbidden.
double separated_momentum_sq(Coordinate kind, double v, const InvariantPoint& f,
                             const SeparatedStrengths& s);

}  // namespace euler2c
