#pragma once

#include <functional>
#include <string>
#include <vector>

#include "euler2c/types.hpp"

namespace euler2c {

/// Regular short-range planar potential.
struct PlanarPotential {
  std::string name;
  std::function<double(const Vec2&)> value;
  std::function<Vec2(const Vec2&)> gradient;
  double sup = 0.0;
  /// V and its gradient are negligible beyond this radius
  double range = 0.0;
};

PlanarPotential zero_potential();
/// V0 * exp(-|q|^2 / (2 w^2))
PlanarPotential gaussian_bump(double V0 = 1.0, double width = 1.0);
/// Radial potential from samples (r_k, V_k), interpolated by cubic Hermite splines and
/// set to zero beyond the last node.
PlanarPotential tabulated_radial(const std::vector<double>& r, const std::vector<double>& V);
/// Reads "r,V" rows; lines starting with '#' and a non-numeric header are skipped.
PlanarPotential tabulated_radial_csv(const std::string& path);

/// Registry lookup: "zero", "gaussian", or "tabulated:<path>". Singular potentials
/// ("kepler", "two-center") are rejected with std::invalid_argument.
PlanarPotential make_potential(const std::string& name, double strength = 1.0);

struct KnaufSweep {
  std::vector<double> impact;     // b = tan(s), s in (-pi/2, pi/2)
  std::vector<double> outgoing;   // outgoing direction angle relative to the incoming one, unwrapped
  int degree = 0;
  int base_samples = 0;
  int refined_samples = 0;
};

inline constexpr int kKnaufSamples = 2048;

/// Degree of the map from the compactified impact-parameter line to the outgoing direction.
/// Throws TrappingError if some trajectory does not escape.
KnaufSweep knauf_degree_planar(const PlanarPotential& V, double h, double direction = 0.0,
                               int samples = kKnaufSamples);

}  // namespace euler2c
