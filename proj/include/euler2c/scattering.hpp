#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "euler2c/actions.hpp"
#include "euler2c/kepler.hpp"
#include "euler2c/monodromy.hpp"
#include "euler2c/trajectory.hpp"

namespace euler2c {

struct Asymptote {
  Vec3 p_hat = Vec3::Zero();  // asymptotic momentum
  Vec3 q_perp = Vec3::Zero();
  int side = 1;  // -1 for t -> -infinity, +1 for t -> +infinity
  double radius = 0.0;
  double error = 0.0;
};

/// Asymptote of an escaped trajectory, obtained by fitting the Kepler orbit of the
/// tail strength at two radii along the relevant end.
Asymptote extract_asymptote(const Trajectory& traj, int side, double tail_strength,
                            const Vec3& tail_center = Vec3::Zero());

/// Kepler system used as a reference: strength at a center on or off the z-axis.
struct KeplerCandidate {
  double mu = 0.0;
  Vec3 center = Vec3::Zero();
};

KeplerCandidate reference_candidate(const Params& P, ReferenceChoice r);

/// Incoming asymptotic data of a scattering trajectory: momentum (norm^2 = 2h)
/// and a point on the incoming asymptote line.
struct IncomingData {
  Vec3 p_in = Vec3::Zero();
  Vec3 q_line = Vec3::Zero();
};

/// Random incoming data with energies in [h_lo, h_hi] and impact parameters up to b_max.
std::vector<IncomingData> random_incoming(std::uint64_t seed, int count, double h_lo = 0.5, double h_hi = 2.0,
                                          double b_max = 3.0);

struct ReferenceCheckSample {
  std::vector<double> radii;
  /// max over components of |F(out) - F(in)| at each radius
  std::vector<double> mismatch;
  /// componentwise mismatch (h, l, g) at the largest radius
  InvariantPoint final_delta;
};

struct ReferenceCheckReport {
  std::vector<ReferenceCheckSample> samples;
  double max_final_mismatch = 0.0;
  double min_final_mismatch = 0.0;
  bool monotone = true;
  /// mismatch decreases with radius and the final value is below the tolerance
  bool passes = false;
};

inline constexpr double kReferenceTolerance = 1e-5;
/// per unit radius; absolute mismatch changes below kMismatchFloor * R are roundoff
inline constexpr double kMismatchFloor = 1e-14;

std::vector<double> default_check_radii();

/// Evaluates F of the two-center problem on both legs of candidate Kepler trajectories.
ReferenceCheckReport reference_property_check(const KeplerCandidate& cand, const Params& P,
                                              const std::vector<IncomingData>& samples,
                                              const std::vector<double>& radii = default_check_radii());

/// Incoming data realising (h, l, g) with incoming direction at polar angle theta from the z-axis.
/// Throws NonPhysicalError if no such asymptote exists for this theta.
IncomingData incoming_for_invariants(const InvariantPoint& f, const Params& P, double theta);

struct DeflectionResult {
  double value = 0.0;
  double error = 0.0;
  std::vector<double> radii;
  std::vector<double> differences;  // Phi - Phi_r at each radius
  bool converged = false;
};

/// Total azimuthal deflection of the trajectory with the given incoming data, truncated at
/// radius R and completed with Kepler tails. Throws CollisionError or TrappingError.
double deflection_angle(const IncomingData& in, const Params& P, double tail_strength, const Vec3& tail_center,
                        double R, double tol = 1e-11);

DeflectionResult deflection_difference(const IncomingData& in, const Params& P, ReferenceChoice ref,
                                       const std::vector<double>& R_seq = {1e3, 2e3, 4e3});
/// Free flow as the reference.
DeflectionResult deflection_difference_free(const IncomingData& in, const Params& P,
                                            const std::vector<double>& R_seq = {1e3, 2e3, 4e3});

struct LoopDeflection {
  std::vector<double> params;  // loop parameter t_k
  std::vector<InvariantPoint> points;
  std::vector<double> differences;
  double variation = 0.0;  // sum of increments reduced to (-pi, pi]
  double max_error = 0.0;
};

LoopDeflection deflection_loop_variation(const LoopPath& loop, const Params& P, ReferenceChoice ref,
                                         int samples = 64, double theta = 1.0471975511965976);

}  // namespace euler2c
