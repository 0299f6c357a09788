#include <doctest.h>

#include <Eigen/Geometry>

#include <cmath>
#include <numbers>

#include "euler2c/dynamics.hpp"
#include "euler2c/kepler.hpp"
#include "euler2c/scattering.hpp"
#include "euler2c/trajectory.hpp"

using namespace euler2c;

namespace {

Trajectory escape_run(const PhaseState& s, const Params& P, double t_max, double r_max) {
  StopCondition stop;
  stop.t_max = t_max;
  stop.r_max = r_max;
  stop.tol = 1e-12;
  return integrate(s, P, stop);
}

}  // namespace

TEST_CASE("free flow asymptote is immediate") {
  const Params P(0.0, 0.0);
  PhaseState s;
  s.q << 1.0, -2.0, 0.5;
  s.p << 0.3, 0.9, -0.2;
  const auto tr = escape_run(s, P, 1e4, 1e3);
  REQUIRE(tr.reason == Termination::RadiusReached);
  const auto a = extract_asymptote(tr, 1, 0.0);
  const double h = 0.5 * s.p.squaredNorm();
  CHECK((a.p_hat - s.p).norm() < 1e-10);
  CHECK((a.q_perp - (s.q - s.q.dot(s.p) * s.p / (2 * h))).norm() < 1e-8);
}

TEST_CASE("pure Kepler asymptote matches the conic") {
  const Params P(1.5, 0.0);
  PhaseState s;
  s.q << -3.0, 1.0, 0.5;
  s.p << 1.2, 0.1, 0.3;
  const auto tr = escape_run(s, P, 1e5, 1e3);
  REQUIRE(tr.reason == Termination::RadiusReached);
  const auto a = extract_asymptote(tr, 1, P.mu1, P.center1());
  const auto conic = conic_asymptote(KeplerOrbit::from_state(P.mu1, P.center1(), s), 1);
  CHECK((a.p_hat - conic.p_hat).norm() < 1e-6);
  CHECK((a.q_perp - conic.q_perp).norm() < 1e-6);
}

TEST_CASE("two-center asymptote invariants") {
  const Params P(2.0, 1.0);
  PhaseState s;
  s.q << -2.0, 1.5, 0.7;
  s.p << 2.0, 0.2, 0.3;
  const auto tr = escape_run(s, P, 1e5, 1e3);
  REQUIRE(tr.reason == Termination::RadiusReached);
  const auto a = extract_asymptote(tr, 1, P.sum());
  const double h = eval_integrals(s, P).h;
  CHECK(a.p_hat.squaredNorm() == doctest::Approx(2 * h).epsilon(1e-5));
  CHECK(std::abs(a.p_hat.dot(a.q_perp)) < 1e-8);
  CHECK(a.q_perp.norm() * a.p_hat.norm() ==
        doctest::Approx(tr.final().q.cross(tr.final().p).norm()).epsilon(1e-6));
  CHECK(a.error < 1e-2);
}

TEST_CASE("reference property check separates references from non-references") {
  const Params P(2.0, 1.0);
  const auto samples = random_incoming(4, 6);
  const auto radii = default_check_radii();
  for (ReferenceChoice r : {ReferenceChoice::KeplerAtO1, ReferenceChoice::KeplerAtO2}) {
    const auto rep = reference_property_check(reference_candidate(P, r), P, samples, radii);
    CHECK(rep.passes);
    CHECK(rep.monotone);
    CHECK(rep.max_final_mismatch < kReferenceTolerance);
  }
  const auto origin = reference_property_check({P.sum(), Vec3::Zero()}, P, samples, radii);
  CHECK_FALSE(origin.passes);
  CHECK(origin.min_final_mismatch > 1e-2);
  const auto free = reference_property_check({0.0, Vec3::Zero()}, P, samples, radii);
  CHECK_FALSE(free.passes);
}

TEST_CASE("the free flow is a reference for equal strengths") {
  const Params P(1.0, 1.0);
  const auto rep = reference_property_check({0.0, Vec3::Zero()}, P, random_incoming(8, 4));
  CHECK(rep.passes);
}

TEST_CASE("enlarging the check radius keeps a passing candidate within tolerance") {
  const Params P(2.0, 1.0);
  const auto samples = random_incoming(12, 4);
  auto radii = default_check_radii();
  const auto base = reference_property_check(reference_candidate(P, ReferenceChoice::KeplerAtO2), P, samples, radii);
  for (double& r : radii) r *= 4;
  const auto big = reference_property_check(reference_candidate(P, ReferenceChoice::KeplerAtO2), P, samples, radii);
  CHECK(base.passes);
  CHECK(big.max_final_mismatch <= kReferenceTolerance);
}

TEST_CASE("incoming data reproduce the requested invariants") {
  const Params P(2.0, 1.0);
  const InvariantPoint f{1.0, 0.3, 4.5};
  const auto in = incoming_for_invariants(f, P, 1.0);
  const auto tail = KeplerOrbit::from_incoming(P.sum(), Vec3::Zero(), in.p_in, in.q_line);
  const auto far = kepler_solve(tail, kepler_time_at_radius(tail, 1e6, -1));
  const auto F = eval_integrals(far, P);
  CHECK(F.h == doctest::Approx(f.h).epsilon(1e-5));
  CHECK(F.l == doctest::Approx(f.l).epsilon(1e-5));
  CHECK(F.g == doctest::Approx(f.g).epsilon(1e-4));
}

TEST_CASE("deflection differences") {
  const Params P(2.0, 1.0);
  const auto in = incoming_for_invariants({1.0, 0.3, 4.5}, P, 1.0);
  CHECK(deflection_difference(in, P, ReferenceChoice::SelfReference).value == 0.0);

  const auto d = deflection_difference(in, P, ReferenceChoice::KeplerAtO2);
  CHECK(d.converged);
  const auto d2 = deflection_difference(in, P, ReferenceChoice::KeplerAtO2, {2e3, 4e3, 8e3});
  CHECK(std::abs(d.value - d2.value) < std::max(1e-5, 3 * (d.error + d2.error)));

  const Params S(1.0, 1.0);
  const auto sym = deflection_difference_free(incoming_for_invariants({1.0, 0.3, 3.0}, S, 1.0), S);
  CHECK(sym.converged);
  CHECK(std::isfinite(sym.value));
}
