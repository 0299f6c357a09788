#include "euler2c/kepler.hpp"

#include <Eigen/Geometry>

#include <cmath>

namespace euler2c {

namespace {

void set_elements(KeplerOrbit& o) {
  const double Lm = o.L.norm();
  o.semi_axis = std::abs(o.mu) / (2.0 * o.h);
  o.mean_motion = std::sqrt(std::abs(o.mu) / std::pow(o.semi_axis, 3));
  o.e = std::sqrt(1.0 + 2.0 * o.h * Lm * Lm / (o.mu * o.mu));
}

}  // namespace

KeplerOrbit KeplerOrbit::from_state(double mu, const Vec3& center, const PhaseState& s0) {
  KeplerOrbit o;
  o.mu = mu;
  o.center = center;
  o.line0 = s0;
  const Vec3 rv = s0.q - center;
  const double r = rv.norm();
  o.h = 0.5 * s0.p.squaredNorm() - mu / r;
  if (!(o.h > 0.0)) throw std::domain_error("KeplerOrbit: energy must be positive");
  o.L = rv.cross(s0.p);
  if (mu == 0.0) return o;
  if (o.L.norm() <= 1e-14 * r * s0.p.norm()) throw std::domain_error("KeplerOrbit: radial orbit");

  set_elements(o);
  const bool att = mu > 0.0;
  const double a = o.semi_axis, e = o.e, k = std::sqrt(e * e - 1.0);
  const double ch = std::max(1.0, (r / a + (att ? 1.0 : -1.0)) / e);
  const double rdot = rv.dot(s0.p);
  const double F0 = std::acosh(ch) * (rdot > 0.0 ? 1.0 : (rdot < 0.0 ? -1.0 : 0.0));
  const double x0 = att ? a * (e - std::cosh(F0)) : a * (e + std::cosh(F0));
  const double y0 = a * k * std::sinh(F0);
  const double th = std::atan2(y0, x0);

  const Vec3 Lh = o.L.normalized(), rh = rv / r;
  o.P = rh * std::cos(th) - Lh.cross(rh) * std::sin(th);
  o.Q = Lh.cross(o.P);
  const double M0 = att ? e * std::sinh(F0) - F0 : e * std::sinh(F0) + F0;
  o.tau = -M0 / o.mean_motion;
  return o;
}

KeplerOrbit KeplerOrbit::from_incoming(double mu, const Vec3& center, const Vec3& p_in, const Vec3& q_line) {
  KeplerOrbit o;
  o.mu = mu;
  o.center = center;
  o.h = 0.5 * p_in.squaredNorm();
  if (!(o.h > 0.0)) throw std::domain_error("KeplerOrbit: energy must be positive");
  const Vec3 u = p_in.normalized();
  const Vec3 d = q_line - center;
  const Vec3 b = d - d.dot(u) * u;
  o.L = b.cross(p_in);
  o.line0 = {center + b, p_in};
  if (mu == 0.0) return o;
  if (o.L.norm() <= 1e-14 * p_in.norm() * std::max(1.0, d.norm()))
    throw std::domain_error("KeplerOrbit: radial orbit");

  set_elements(o);
  const double k = std::sqrt(o.e * o.e - 1.0);
  const double beta = std::atan2(k, mu > 0.0 ? 1.0 : -1.0);
  const Vec3 Lh = o.L.normalized();
  o.P = std::cos(beta) * u - std::sin(beta) * Lh.cross(u);
  o.Q = Lh.cross(o.P);
  o.tau = 0.0;
  return o;
}

Vec3 KeplerOrbit::direction(int side) const {
  if (is_free()) return line0.p.normalized();
  const double k = std::sqrt(e * e - 1.0);
  const double sx = (mu > 0.0 ? -1.0 : 1.0) * side;
  return (sx * P + k * Q) / e;
}

double solve_hyperbolic_kepler(double e, double M, bool attractive) {
  if (M == 0.0) return 0.0;
  const double sgn = M > 0.0 ? 1.0 : -1.0, Ma = std::abs(M);
  double lo, hi;
  if (attractive) {
    lo = std::asinh(Ma / e);
    hi = std::asinh(Ma / (e - 1.0));
  } else {
    lo = std::asinh(Ma / (e + 1.0));
    hi = std::asinh(Ma / e);
  }
  const double c = attractive ? -1.0 : 1.0;
  double F = hi;
  for (int it = 0; it < 200; ++it) {
    const double f = e * std::sinh(F) + c * F - Ma;
    const double fp = e * std::cosh(F) + c;
    if (f > 0.0)
      hi = std::min(hi, F);
    else
      lo = std::max(lo, F);
    double Fn = F - f / fp;
    if (!(Fn >= lo && Fn <= hi)) Fn = 0.5 * (lo + hi);
    if (std::abs(Fn - F) <= 1e-15 * std::max(1.0, std::abs(F))) return sgn * Fn;
    F = Fn;
  }
  throw ConvergenceError("solve_hyperbolic_kepler: no convergence");
}

PhaseState kepler_solve(const KeplerOrbit& o, double t) {
  if (o.is_free()) return {o.line0.q + t * o.line0.p, o.line0.p};
  const bool att = o.mu > 0.0;
  const double a = o.semi_axis, e = o.e, k = std::sqrt(e * e - 1.0);
  const double F = solve_hyperbolic_kepler(e, o.mean_motion * (t - o.tau), att);
  const double ch = std::cosh(F), sh = std::sinh(F);
  const double x = att ? a * (e - ch) : a * (e + ch);
  const double y = a * k * sh;
  const double r = att ? a * (e * ch - 1.0) : a * (e * ch + 1.0);
  const double w = o.mean_motion * a / r;
  const double vx = (att ? -a * sh : a * sh) * w;
  const double vy = a * k * ch * w;
  return {o.center + x * o.P + y * o.Q, vx * o.P + vy * o.Q};
}

double kepler_time_at_radius(const KeplerOrbit& o, double r, int side) {
  if (o.is_free()) {
    const Vec3 d = o.line0.q - o.center;
    const Vec3& p = o.line0.p;
    const double p2 = p.squaredNorm(), dp = d.dot(p);
    const double disc = dp * dp - p2 * (d.squaredNorm() - r * r);
    if (disc < 0.0) throw std::domain_error("kepler_time_at_radius: radius below closest approach");
    return (-dp + side * std::sqrt(disc)) / p2;
  }
  const bool att = o.mu > 0.0;
  const double ch = (r / o.semi_axis + (att ? 1.0 : -1.0)) / o.e;
  if (ch < 1.0) throw std::domain_error("kepler_time_at_radius: radius below periapsis");
  const double F = side * std::acosh(ch);
  const double M = att ? o.e * std::sinh(F) - F : o.e * std::sinh(F) + F;
  return o.tau + M / o.mean_motion;
}

ConicAsymptote conic_asymptote(const KeplerOrbit& o, int side) {
  const Vec3 u = o.direction(side);
  const Vec3 C = o.is_free() ? o.line0.q : Vec3(o.center + o.semi_axis * o.e * o.P);
  return {std::sqrt(2.0 * o.h) * u, C - C.dot(u) * u};
}

}  // namespace euler2c
