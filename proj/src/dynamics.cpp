#include "euler2c/dynamics.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>

namespace euler2c {

PhaseState equations_of_motion(const PhaseState& s, const Params& P) {
  const double eps = collision_radius(P);
  if ((s.q - P.center1()).norm() < eps || (s.q - P.center2()).norm() < eps)
    throw CollisionError("equations_of_motion: state at a center");
  return {s.p, force(s.q, P)};
}

namespace {

// Columns are dq/dxi, dq/deta, dq/dphi.
Mat3 prolate_jacobian(double xi, double eta, double phi, double a) {
  const double sx = std::sqrt(std::max(xi * xi - 1.0, 0.0));
  const double se = std::sqrt(std::max(1.0 - eta * eta, 0.0));
  const double c = std::cos(phi), s = std::sin(phi);
  Mat3 J;
  J.col(0) << a * xi * se / sx * c, a * xi * se / sx * s, a * eta;
  J.col(1) << -a * eta * sx / se * c, -a * eta * sx / se * s, a * xi;
  J.col(2) << -a * sx * se * s, a * sx * se * c, 0.0;
  return J;
}

}  // namespace

ProlateState cartesian_to_prolate(const PhaseState& s, const Params& P, bool with_momenta) {
  const double a = P.a;
  const Vec3& q = s.q;
  const double rho2 = q.x() * q.x() + q.y() * q.y();
  const double r1 = (q - P.center1()).norm();
  const double r2 = (q - P.center2()).norm();

  ProlateState w;
  w.xi = std::max(1.0, (r1 + r2) / (2.0 * a));
  w.eta = std::clamp((r1 - r2) / (2.0 * a), -1.0, 1.0);
  w.phi = std::atan2(q.y(), q.x());
  if (w.phi < 0.0) w.phi += 2.0 * std::numbers::pi;
  if (!with_momenta) return w;

  if (rho2 == 0.0) throw AxisDegeneracyError("cartesian_to_prolate: momenta undefined on the z-axis");
  if (w.xi <= 1.0 || std::abs(w.eta) >= 1.0)
    throw AxisDegeneracyError("cartesian_to_prolate: coordinate singularity");

  // Cotangent lift: generalized momenta are J^T p.
  const Vec3 pg = prolate_jacobian(w.xi, w.eta, w.phi, a).transpose() * s.p;
  w.p_xi = pg(0);
  w.p_eta = pg(1);
  w.p_phi = pg(2);
  return w;
}

PhaseState prolate_to_cartesian(const ProlateState& w, const Params& P) {
  const double a = P.a;
  const double sx = std::sqrt(std::max(w.xi * w.xi - 1.0, 0.0));
  const double se = std::sqrt(std::max(1.0 - w.eta * w.eta, 0.0));
  PhaseState s;
  s.q << a * sx * se * std::cos(w.phi), a * sx * se * std::sin(w.phi), a * w.xi * w.eta;
  if (sx == 0.0 || se == 0.0) {
    if (w.p_xi != 0.0 || w.p_eta != 0.0 || w.p_phi != 0.0)
      throw AxisDegeneracyError("prolate_to_cartesian: momenta undefined on the z-axis");
    return s;
  }
  const Mat3 J = prolate_jacobian(w.xi, w.eta, w.phi, a);
  s.p = J.transpose().partialPivLu().solve(Vec3(w.p_xi, w.p_eta, w.p_phi));
  return s;
}

double separated_h_xi(const ProlateState& w, const Params& P) {
  const double a2 = P.a * P.a;
  const double d = w.xi * w.xi - 1.0;
  return d * w.p_xi * w.p_xi / (2.0 * a2) + w.p_phi * w.p_phi / (2.0 * a2 * d) - P.sum() / P.a * w.xi;
}

double separated_h_eta(const ProlateState& w, const Params& P) {
  const double a2 = P.a * P.a;
  const double d = 1.0 - w.eta * w.eta;
  return d * w.p_eta * w.p_eta / (2.0 * a2) + w.p_phi * w.p_phi / (2.0 * a2 * d) + P.diff() / P.a * w.eta;
}

Eigen::Matrix<double, 5, 1> momentum_numerator_coeffs(const InvariantPoint& f, double s) {
  Eigen::Matrix<double, 5, 1> c;
  c << 2.0 * f.g - f.l * f.l, -2.0 * s, -2.0 * f.g - 2.0 * f.h, 2.0 * s, 2.0 * f.h;
  return c;
}

double separated_momentum_sq(Coordinate kind, double v, const InvariantPoint& f,
                             const SeparatedStrengths& s) {
  if (kind == Coordinate::Xi) {
    if (v < 1.0) throw std::domain_error("separated_momentum_sq: xi below 1");
    if (v == 1.0) throw PoleError("separated_momentum_sq: pole at xi = 1");
    const double d = v * v - 1.0;
    return momentum_numerator(v, f, s.xi) / (d * d);
  }
  if (std::abs(v) > 1.0) throw std::domain_error("separated_momentum_sq: |eta| above 1");
  if (std::abs(v) == 1.0) throw PoleError("separated_momentum_sq: pole at eta = +-1");
  const double d = 1.0 - v * v;
  return momentum_numerator(v, f, s.eta) / (d * d);
}

}  // namespace euler2c
