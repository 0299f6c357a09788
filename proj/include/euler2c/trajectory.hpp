#pragma once

#include <vector>

#include "euler2c/types.hpp"

namespace euler2c {

enum class Termination { TimeLimit, RadiusReached, Collision };

const char* to_string(Termination t);

struct StopCondition {
  /// final time; a negative value integrates backwards
  double t_max = 1e4;
  /// stop once |q| exceeds r_max while moving outwards
  double r_max = 1e3;
  double tol = 1e-10;
  /// keep every accepted step (otherwise only the end points)
  bool record = true;
};

struct TrajectorySample {
  double t = 0.0;
  PhaseState s;
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  double tol = 0.0;
  Termination reason = Termination::TimeLimit;

  const PhaseState& initial() const { return samples.front().s; }
  const PhaseState& final() const { return samples.back().s; }
};

Trajectory integrate(const PhaseState& s0, const Params& P, const StopCondition& stop);

}  // namespace euler2c
