#pragma once

#include <string>
#include <vector>

#include "euler2c/actions.hpp"

namespace euler2c {

enum class LoopShape { Ellipse, Rectangle, Diamond };

/// Closed curve in the (g, l)-plane at fixed energy h > 0, crossing l = 0 at g_a < g_b.
struct LoopPath {
  double h = 1.0;
  double g_a = 0.0;
  double g_b = 0.0;
  /// half-height in l
  double dl = 0.1;
  LoopShape shape = LoopShape::Ellipse;
  /// +1 or -1; reversing the orientation inverts the monodromy matrix
  int orientation = 1;

  double center() const { return 0.5 * (g_a + g_b); }
  /// point at parameter t in [0, 2 pi); t = 0 is (g_b, 0)
  InvariantPoint at(double t) const;
};

struct LoopCheck {
  bool valid = false;
  double min_margin = 0.0;
  std::string reason;
};

/// Samples the loop and checks it stays inside the physical scattering region,
/// away from the critical set of F and of the reference.
LoopCheck validate_loop(const LoopPath& loop, const Params& P, ReferenceChoice ref, int samples = 512);

/// Loop around the critical line(s) with the given offset of g - h, sized to
/// avoid the other lines and the l = 0 ends of the critical curves.
LoopPath make_loop(const Params& P, double h, double offset, ReferenceChoice ref);

struct MonodromyResult {
  Mat3i matrix = Mat3i::Identity();
  double m_raw = 0.0;
  double n_raw = 0.0;
  double residual = 0.0;
  bool reliable = true;
  ReferenceChoice reference = ReferenceChoice::SelfReference;
  /// J_xi(g_a), J_xi(g_b), J_eta(g_a), J_eta(g_b)
  std::array<double, 4> jumps{};
  LoopPath loop;

  int m() const { return matrix(0, 2); }
  int n() const { return matrix(1, 2); }
};

inline constexpr double kResidualLimit = 0.05;

MonodromyResult monodromy_matrix(const LoopPath& loop, const Params& P, ReferenceChoice ref);
MonodromyResult hamiltonian_monodromy(const LoopPath& loop, const Params& P);

struct Table1Entry {
  /// e.g. "gamma1", or "gamma1gamma2" for coincident lines
  std::string label;
  std::vector<int> lines;
  MonodromyResult result;
};

/// One entry per distinct critical line offset, merging coincident lines into one loop.
std::vector<Table1Entry> table1(const Params& P, ReferenceChoice ref, double h);

}  // namespace euler2c
