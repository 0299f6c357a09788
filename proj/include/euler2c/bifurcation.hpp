#pragma once

#include <array>
#include <limits>
#include <string>
#include <vector>

#include "euler2c/dynamics.hpp"

namespace euler2c {

/// Map (h, l, g) of the problem with half-separation a to the equivalent point of
/// the rescaled problem with a = 1 (q -> q/a, p -> sqrt(a) p).
InvariantPoint to_unit_separation(const InvariantPoint& f, double a);

/// Critical line g = h + offset at l = 0.
struct CriticalLine {
  int index = 0;  // 1, 2, 3
  double offset = 0.0;
};

std::array<CriticalLine, 3> critical_lines(const Params& P);

struct CurveSample {
  double param = 0.0;
  InvariantPoint f;
  bool physical = true;
};

struct CriticalCurve {
  std::string family;  // "lambda", "nu", "xi", "eta"
  std::vector<CurveSample> samples;
};

struct CurveSampling {
  int count = 2000;
  double lambda_max = 3.0;
  /// upper end of xi for unbounded spatial families
  double xi_cap = 20.0;
};

/// Planar (l = 0) critical curves in the (h, g) plane.
std::vector<CriticalCurve> critical_curves_planar(const Params& P, const CurveSampling& s = {});

/// Spatial critical curves at fixed energy; each sample appears for l >= 0 and its mirror l <= 0.
std::vector<CriticalCurve> critical_curves_spatial(const Params& P, double h, const CurveSampling& s = {});

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool unbounded() const { return hi == std::numeric_limits<double>::infinity(); }
};

struct PhysicalClassification {
  std::vector<Interval> xi_intervals;
  std::vector<Interval> eta_intervals;
  bool physical = false;
  /// xi-motion reaches infinity
  bool scattering = false;
  /// within the physicality margin of the critical set
  bool borderline = false;
  /// estimated distance of f to the critical set
  double margin = std::numeric_limits<double>::infinity();
};

inline constexpr double kBorderlineMargin = 1e-9;

/// Sign intervals of the separated momentum numerators. Works in a = 1 units after rescaling.
PhysicalClassification classify(const InvariantPoint& f, const Params& P);

/// Intervals where p^2 >= 0 for one coordinate with a given strength (a = 1 units).
std::vector<Interval> allowed_intervals(Coordinate kind, const InvariantPoint& f, double strength);

/// Distance estimate from f to the set where the numerator acquires a double root in the
/// coordinate domain, together with the l = 0 line where a root hits the domain boundary.
double critical_margin(Coordinate kind, const InvariantPoint& f, double strength);

}  // namespace euler2c
