#include "euler2c/scattering.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "euler2c/dynamics.hpp"
#include "euler2c/ode.hpp"

namespace euler2c {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_angle(double x) { return x - 2.0 * kPi * std::round(x / (2.0 * kPi)); }

double azimuth(const Vec3& v) { return std::atan2(v.y(), v.x()); }

// Index of the sample whose distance from the origin is closest to r, searching the
// outgoing (side = +1) or incoming (side = -1) end of the trajectory.
std::size_t sample_near_radius(const Trajectory& tr, double r, int side) {
  const auto& s = tr.samples;
  std::size_t best = side > 0 ? s.size() - 1 : 0;
  if (side > 0) {
    for (std::size_t i = s.size(); i-- > 0;) {
      if (std::abs(s[i].s.q.norm() - r) < std::abs(s[best].s.q.norm() - r)) best = i;
      if (s[i].s.q.norm() < r) break;
    }
  } else {
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (std::abs(s[i].s.q.norm() - r) < std::abs(s[best].s.q.norm() - r)) best = i;
      if (s[i].s.q.norm() < r) break;
    }
  }
  return best;
}

Params reference_params(const Params& P, ReferenceChoice r) {
  switch (r) {
    case ReferenceChoice::KeplerAtO1: return Params(P.mu1 - P.mu2, 0.0, P.a);
    case ReferenceChoice::KeplerAtO2: return Params(0.0, P.mu2 - P.mu1, P.a);
    case ReferenceChoice::SelfReference: break;
  }
  return P;
}

}  // namespace

Asymptote extract_asymptote(const Trajectory& tr, int side, double tail_strength, const Vec3& tail_center) {
  if (tr.samples.size() < 2) throw std::invalid_argument("extract_asymptote: trajectory too short");
  if (side > 0 && tr.reason != Termination::RadiusReached)
    throw TrappingError("extract_asymptote: trajectory did not escape");
  const PhaseState& far = side > 0 ? tr.final() : tr.initial();
  const double r_far = far.q.norm();
  const PhaseState& near = tr.samples[sample_near_radius(tr, 0.25 * r_far, side)].s;

  auto fit = [&](const PhaseState& s) {
    return conic_asymptote(KeplerOrbit::from_state(tail_strength, tail_center, s), side);
  };
  const ConicAsymptote a = fit(far), b = fit(near);
  Asymptote out;
  out.p_hat = a.p_hat;
  out.q_perp = a.q_perp;
  out.side = side;
  out.radius = r_far;
  out.error = std::max((a.p_hat - b.p_hat).norm(), (a.q_perp - b.q_perp).norm());
  return out;
}

KeplerCandidate reference_candidate(const Params& P, ReferenceChoice r) {
  switch (r) {
    case ReferenceChoice::KeplerAtO1: return {P.mu1 - P.mu2, P.center1()};
    case ReferenceChoice::KeplerAtO2: return {P.mu2 - P.mu1, P.center2()};
    case ReferenceChoice::SelfReference: break;
  }
  throw std::invalid_argument("reference_candidate: SelfReference is not a Kepler system");
}

std::vector<IncomingData> random_incoming(std::uint64_t seed, int count, double h_lo, double h_hi, double b_max) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  std::vector<IncomingData> out;
  for (int k = 0; k < count; ++k) {
    const double h = h_lo + (h_hi - h_lo) * U(rng);
    const double cz = 2.0 * U(rng) - 1.0, ph = 2.0 * kPi * U(rng);
    const double sz = std::sqrt(1.0 - cz * cz);
    const Vec3 u(sz * std::cos(ph), sz * std::sin(ph), cz);
    Vec3 e1 = u.unitOrthogonal();
    const Vec3 e2 = u.cross(e1);
    const double b = 0.2 + (b_max - 0.2) * U(rng), w = 2.0 * kPi * U(rng);
    out.push_back({std::sqrt(2.0 * h) * u, b * (std::cos(w) * e1 + std::sin(w) * e2)});
  }
  return out;
}

std::vector<double> default_check_radii() {
  std::vector<double> r;
  for (double R = 1e3; R < 2e6; R *= 4.0) r.push_back(R);
  return r;
}

ReferenceCheckReport reference_property_check(const KeplerCandidate& cand, const Params& P,
                                              const std::vector<IncomingData>& samples,
                                              const std::vector<double>& radii) {
  ReferenceCheckReport rep;
  rep.min_final_mismatch = std::numeric_limits<double>::infinity();
  for (const auto& in : samples) {
    const KeplerOrbit o = KeplerOrbit::from_incoming(cand.mu, cand.center, in.p_in, in.q_line);
    ReferenceCheckSample s;
    for (double R : radii) {
      const InvariantPoint a = eval_integrals(kepler_solve(o, kepler_time_at_radius(o, R, -1)), P);
      const InvariantPoint b = eval_integrals(kepler_solve(o, kepler_time_at_radius(o, R, 1)), P);
      s.final_delta = {std::abs(b.h - a.h), std::abs(b.l - a.l), std::abs(b.g - a.g)};
      s.radii.push_back(R);
      s.mismatch.push_back(std::max({s.final_delta.h, s.final_delta.l, s.final_delta.g}));
    }
    // increases below the cancellation floor of G at radius R do not count
    for (std::size_t k = 1; k < s.mismatch.size(); ++k)
      if (s.mismatch[k] > s.mismatch[k - 1] + kMismatchFloor * s.radii[k]) rep.monotone = false;
    rep.max_final_mismatch = std::max(rep.max_final_mismatch, s.mismatch.back());
    rep.min_final_mismatch = std::min(rep.min_final_mismatch, s.mismatch.back());
    rep.samples.push_back(std::move(s));
  }
  rep.passes = rep.monotone && rep.max_final_mismatch < kReferenceTolerance;
  return rep;
}

IncomingData incoming_for_invariants(const InvariantPoint& f, const Params& P, double theta) {
  if (!(f.h > 0.0)) throw NonPhysicalError("incoming_for_invariants: energy must be positive");
  const double st = std::sin(theta), ct = std::cos(theta);
  if (std::abs(st) < 1e-12) throw std::invalid_argument("incoming_for_invariants: direction along the axis");
  const double k = std::sqrt(2.0 * f.h);
  const double v = -f.l / (k * st);
  const double b2 = (2.0 * (f.g - f.h) + 2.0 * f.h * P.a * P.a * st * st + 2.0 * P.a * P.diff() * ct) / (2.0 * f.h);
  const double u2 = b2 - v * v;
  if (u2 < 0.0) throw NonPhysicalError("incoming_for_invariants: no asymptote with this direction");
  const Vec3 e1(ct, 0.0, -st), e2(0.0, 1.0, 0.0);
  return {k * Vec3(st, 0.0, ct), std::sqrt(u2) * e1 + v * e2};
}

double deflection_angle(const IncomingData& in, const Params& P, double tail_strength, const Vec3& tail_center,
                        double R, double tol) {
  using V7 = Eigen::Matrix<double, 7, 1>;
  const KeplerOrbit tail = KeplerOrbit::from_incoming(tail_strength, tail_center, in.p_in, in.q_line);
  const PhaseState s0 = kepler_solve(tail, kepler_time_at_radius(tail, R, -1));
  const double dphi_in = wrap_angle(azimuth(s0.q) - azimuth(-tail.direction(-1)));

  const double eps = collision_radius(P);
  auto rhs = [&](double, const V7& y) {
    const Vec3 q = y.head<3>();
    if ((q - P.center1()).norm() < eps || (q - P.center2()).norm() < eps)
      throw CollisionError("deflection_angle: collision");
    V7 d;
    d.segment<3>(0) = y.segment<3>(3);
    d.segment<3>(3) = force(q, P);
    d(6) = (q.x() * y(4) - q.y() * y(3)) / (q.x() * q.x() + q.y() * q.y());
    return d;
  };
  bool escaped = false;
  auto observer = [&](double, const V7& y) {
    const Vec3 q = y.head<3>() - tail_center;
    escaped = q.norm() > R && q.dot(y.segment<3>(3)) > 0.0;
    return !escaped;
  };
  V7 y;
  y << s0.q, s0.p, 0.0;
  Dp5Options opt;
  opt.rtol = opt.atol = tol;
  const double t_max = 50.0 * R / in.p_in.norm() + 1e5;
  const Dp5Status st = integrate_dp5<7>(rhs, 0.0, y, t_max, opt, observer);
  if (st == Dp5Status::StepUnderflow) throw CollisionError("deflection_angle: collision");
  if (!escaped) throw TrappingError("deflection_angle: trajectory did not escape");

  const PhaseState s1{y.head<3>(), y.segment<3>(3)};
  const KeplerOrbit out = KeplerOrbit::from_state(tail_strength, tail_center, s1);
  const double dphi_out = wrap_angle(azimuth(out.direction(1)) - azimuth(s1.q));
  return dphi_in + y(6) + dphi_out;
}

namespace {

DeflectionResult extrapolate(const std::vector<double>& R, const std::vector<double>& D) {
  DeflectionResult r;
  r.radii = R;
  r.differences = D;
  if (R.size() == 1) {
    r.value = D[0];
    r.converged = true;
    return r;
  }
  std::vector<double> E;
  for (std::size_t k = 0; k + 1 < R.size(); ++k)
    E.push_back((R[k + 1] * D[k + 1] - R[k] * D[k]) / (R[k + 1] - R[k]));
  r.value = E.back();
  r.error = E.size() > 1 ? std::abs(E.back() - E[E.size() - 2]) : std::abs(D.back() - D[D.size() - 2]);
  r.converged = r.error < 1e-2;
  return r;
}

DeflectionResult difference_against(const IncomingData& in, const Params& P, const Params& Pr, double mu_r,
                                    const Vec3& c_r, const std::vector<double>& R_seq) {
  std::vector<double> D;
  for (double R : R_seq) {
    const double phi = deflection_angle(in, P, P.sum(), Vec3::Zero(), R);
    const double phi_r = deflection_angle(in, Pr, mu_r, c_r, R);
    D.push_back(phi - phi_r);
  }
  return extrapolate(R_seq, D);
}

}  // namespace

DeflectionResult deflection_difference(const IncomingData& in, const Params& P, ReferenceChoice ref,
                                       const std::vector<double>& R_seq) {
  if (ref == ReferenceChoice::SelfReference) {
    DeflectionResult r;
    r.radii = R_seq;
    r.differences.assign(R_seq.size(), 0.0);
    r.converged = true;
    return r;
  }
  const KeplerCandidate c = reference_candidate(P, ref);
  return difference_against(in, P, reference_params(P, ref), c.mu, c.center, R_seq);
}

DeflectionResult deflection_difference_free(const IncomingData& in, const Params& P,
                                            const std::vector<double>& R_seq) {
  return difference_against(in, P, Params(0.0, 0.0, P.a), 0.0, Vec3::Zero(), R_seq);
}

LoopDeflection deflection_loop_variation(const LoopPath& loop, const Params& P, ReferenceChoice ref, int samples,
                                         double theta) {
  LoopDeflection out;
  for (int k = 0; k < samples; ++k) {
    const double t = 2.0 * kPi * (k + 0.5) / samples;
    const InvariantPoint f = loop.at(t);
    const DeflectionResult d = deflection_difference(incoming_for_invariants(f, P, theta), P, ref);
    out.params.push_back(t);
    out.points.push_back(f);
    out.differences.push_back(d.value);
    out.max_error = std::max(out.max_error, d.error);
  }
  for (int k = 0; k < samples; ++k)
    out.variation += wrap_angle(out.differences[(k + 1) % samples] - out.differences[k]);
  return out;
}

}  // namespace euler2c
