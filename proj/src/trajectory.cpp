#include "euler2c/trajectory.hpp"

#include "euler2c/dynamics.hpp"
#include "euler2c/ode.hpp"

namespace euler2c {

const char* to_string(Termination t) {
  switch (t) {
    case Termination::TimeLimit: return "time-limit";
    case Termination::RadiusReached: return "radius-reached";
    case Termination::Collision: return "collision";
  }
  return "unknown";
}

Trajectory integrate(const PhaseState& s0, const Params& P, const StopCondition& stop) {
  using V6 = Eigen::Matrix<double, 6, 1>;
  const double eps = collision_radius(P);
  if ((s0.q - P.center1()).norm() < eps || (s0.q - P.center2()).norm() < eps)
    throw CollisionError("integrate: initial state at a center");

  Trajectory tr;
  tr.tol = stop.tol;
  tr.samples.push_back({0.0, s0});
  const double dir = stop.t_max >= 0.0 ? 1.0 : -1.0;

  auto unpack = [](const V6& y) { return PhaseState{y.head<3>(), y.tail<3>()}; };
  auto rhs = [&](double, const V6& y) {
    V6 d;
    d.head<3>() = y.tail<3>();
    d.tail<3>() = force(Vec3(y.head<3>()), P);
    return d;
  };
  bool collided = false, escaped = false;
  auto observer = [&](double t, const V6& y) {
    const Vec3 q = y.head<3>();
    if (stop.record) tr.samples.push_back({t, unpack(y)});
    if ((q - P.center1()).norm() < eps || (q - P.center2()).norm() < eps) {
      collided = true;
      if (!stop.record) tr.samples.push_back({t, unpack(y)});
      return false;
    }
    if (q.norm() > stop.r_max && dir * q.dot(y.tail<3>()) > 0.0) {
      escaped = true;
      if (!stop.record) tr.samples.push_back({t, unpack(y)});
      return false;
    }
    return true;
  };

  V6 y;
  y << s0.q, s0.p;
  Dp5Options opt;
  opt.rtol = opt.atol = stop.tol;
  double t_end = 0.0;
  const Dp5Status st = integrate_dp5<6>(rhs, 0.0, y, stop.t_max, opt, observer, &t_end);

  if (collided || st == Dp5Status::StepUnderflow)
    tr.reason = Termination::Collision;
  else if (escaped)
    tr.reason = Termination::RadiusReached;
  else
    tr.reason = Termination::TimeLimit;
  if (tr.samples.back().t != t_end) tr.samples.push_back({t_end, unpack(y)});
  return tr;
}

}  // namespace euler2c
