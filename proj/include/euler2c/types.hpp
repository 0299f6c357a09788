#pragma once

#include <Eigen/Core>

#include <stdexcept>
#include <string>

namespace euler2c {

template <typename Scalar>
using Vec3T = Eigen::Matrix<Scalar, 3, 1>;
using Vec3 = Vec3T<double>;
using Vec2 = Eigen::Vector2d;
using Mat3 = Eigen::Matrix3d;
using Mat3i = Eigen::Matrix3i;

/// Problem instance: two fixed centers o_i = (0, 0, (-1)^i a) with strengths mu1, mu2.
/// No ordering between |mu1| and |mu2| is assumed.
struct Params {
  double mu1 = 0.0;
  double mu2 = 0.0;
  double a = 1.0;

  Params() = default;
  Params(double mu1_, double mu2_, double a_ = 1.0) : mu1(mu1_), mu2(mu2_), a(a_) {
    if (!(a_ > 0.0)) throw std::invalid_argument("Params: half-separation a must be positive");
  }

  Vec3 center1() const { return {0.0, 0.0, -a}; }
  Vec3 center2() const { return {0.0, 0.0, a}; }
  /// strength entering the xi-equation
  double sum() const { return mu1 + mu2; }
  /// strength entering the eta-equation
  double diff() const { return mu1 - mu2; }
  /// z -> -z reflection, which exchanges the roles of the two centers
  Params mirrored() const { return Params(mu2, mu1, a); }
};

template <typename Scalar>
struct PhaseStateT {
  Vec3T<Scalar> q = Vec3T<Scalar>::Zero();
  Vec3T<Scalar> p = Vec3T<Scalar>::Zero();
};
using PhaseState = PhaseStateT<double>;

/// Prolate ellipsoidal coordinates with canonically conjugate momenta.
struct ProlateState {
  double xi = 1.0;
  double eta = 0.0;
  double phi = 0.0;
  double p_xi = 0.0;
  double p_eta = 0.0;
  double p_phi = 0.0;
};

/// A value (h, l, g) of the integral map F = (H, L_z, G).
struct InvariantPoint {
  double h = 0.0;
  double l = 0.0;
  double g = 0.0;
};

enum class Coordinate { Xi, Eta };

// Errors ------------------------------------------------------------------

struct CollisionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct AxisDegeneracyError : std::domain_error {
  using std::domain_error::domain_error;
};
struct PoleError : std::domain_error {
  using std::domain_error::domain_error;
};
struct NonPhysicalError : std::domain_error {
  using std::domain_error::domain_error;
};
/// Input lies on (or numerically at) the critical set of F.
struct CriticalValueError : std::domain_error {
  using std::domain_error::domain_error;
};
struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct TrappingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace euler2c
