#include "euler2c/monodromy.hpp"

#include <cmath>
#include <numbers>

namespace euler2c {

InvariantPoint LoopPath::at(double t) const {
  double x = std::cos(t), y = std::sin(t);
  if (shape == LoopShape::Rectangle) {
    const double r = std::max(std::abs(x), std::abs(y));
    x /= r;
    y /= r;
  } else if (shape == LoopShape::Diamond) {
    const double r = std::abs(x) + std::abs(y);
    x /= r;
    y /= r;
  }
  const double hw = 0.5 * (g_b - g_a);
  return {h, orientation * dl * y, center() + hw * x};
}

LoopCheck validate_loop(const LoopPath& loop, const Params& P, ReferenceChoice ref, int samples) {
  LoopCheck out;
  if (!(loop.h > 0.0)) {
    out.reason = "loop energy must be positive";
    return out;
  }
  if (!(loop.g_b > loop.g_a) || !(loop.dl > 0.0)) {
    out.reason = "loop must satisfy g_a < g_b and dl > 0";
    return out;
  }
  for (double gc : {loop.g_a, loop.g_b})
    for (const auto& line : critical_lines(P))
      if (std::abs(gc - loop.h - line.offset) < 1e-6) {
        out.reason = "loop crosses l = 0 on a critical line";
        return out;
      }

  const double sr = reference_xi_strength(P, ref);
  const double perimeter = 2.0 * std::numbers::pi * std::max(0.5 * (loop.g_b - loop.g_a), loop.dl);
  const double need = 0.5 * perimeter / samples;
  out.min_margin = std::numeric_limits<double>::infinity();
  for (int k = 0; k < samples; ++k) {
    const InvariantPoint f = loop.at(2.0 * std::numbers::pi * k / samples);
    const PhysicalClassification c = classify(f, P);
    if (!c.physical || !c.scattering) {
      out.reason = "loop leaves the physical scattering region";
      return out;
    }
    if (c.eta_intervals.size() != 1) {
      out.reason = "eta-motion splits into several components on the loop";
      return out;
    }
    const InvariantPoint u = to_unit_separation(f, P.a);
    const double m = std::min(c.margin, critical_margin(Coordinate::Xi, u, sr));
    out.min_margin = std::min(out.min_margin, m);
    if (m < need) {
      out.reason = "loop passes too close to the critical set";
      return out;
    }
  }
  out.valid = true;
  return out;
}

namespace {

// g - h at which the spatial critical curves meet l = 0 away from the lines.
std::vector<double> curve_touch_offsets(const Params& P, double h) {
  std::vector<double> out;
  const double hu = h * P.a;
  auto touch = [&](double s, bool xi) {
    if (hu == 0.0) return;
    const double v = -s / (2.0 * hu);
    const bool inside = xi ? v > 1.0 : (std::abs(v) < 1.0 && v != 0.0);
    if (inside) out.push_back(P.a * (hu * (2.0 * v * v - 2.0) + s * (3.0 * v * v - 1.0) / (2.0 * v)));
  };
  touch(P.sum(), true);
  touch(P.diff(), false);
  return out;
}

}  // namespace

LoopPath make_loop(const Params& P, double h, double offset, ReferenceChoice ref) {
  std::vector<double> features = curve_touch_offsets(P, h);
  for (const auto& line : critical_lines(P)) features.push_back(line.offset);
  if (ref != ReferenceChoice::SelfReference) features.push_back(P.a * reference_xi_strength(P, ref));

  double gap = std::numeric_limits<double>::infinity();
  for (double o : features)
    if (std::abs(o - offset) > 1e-9) gap = std::min(gap, std::abs(o - offset));
  double dg = std::isfinite(gap) ? std::min(0.4 * gap, 0.5) : 0.5;

  LoopPath loop;
  loop.h = h;
  loop.dl = 0.5 * dg;
  for (int attempt = 0; attempt < 12; ++attempt) {
    loop.g_a = h + offset - dg;
    loop.g_b = h + offset + dg;
    if (validate_loop(loop, P, ref).valid) break;
    if (attempt % 2 == 0)
      loop.dl *= 0.5;
    else
      dg *= 0.7;
  }
  return loop;
}

MonodromyResult monodromy_matrix(const LoopPath& loop, const Params& P, ReferenceChoice ref) {
  const LoopCheck chk = validate_loop(loop, P, ref);
  if (!chk.valid) throw std::invalid_argument("monodromy_matrix: invalid loop: " + chk.reason);

  MonodromyResult r;
  r.reference = ref;
  r.loop = loop;
  bool converged = true;
  auto jump = [&](ActionKind k, double g) {
    const DlLimit d = dl_limit(k, loop.h, g, P, ref);
    converged = converged && d.converged;
    return 2.0 * d.value;
  };
  r.jumps = {jump(ActionKind::XiMod, loop.g_a), jump(ActionKind::XiMod, loop.g_b),
             jump(ActionKind::Eta, loop.g_a), jump(ActionKind::Eta, loop.g_b)};

  r.m_raw = -(r.jumps[0] - r.jumps[1]) * loop.orientation;
  r.n_raw = (r.jumps[2] - r.jumps[3]) * loop.orientation;
  const int m = int(std::lround(r.m_raw)), n = int(std::lround(r.n_raw));
  r.matrix = Mat3i::Identity();
  r.matrix(0, 2) = m;
  r.matrix(1, 2) = n;
  r.residual = std::max(std::abs(r.m_raw - m), std::abs(r.n_raw - n));
  r.reliable = converged && r.residual < kResidualLimit;
  return r;
}

MonodromyResult hamiltonian_monodromy(const LoopPath& loop, const Params& P) {
  return monodromy_matrix(loop, P, ReferenceChoice::SelfReference);
}

std::vector<Table1Entry> table1(const Params& P, ReferenceChoice ref, double h) {
  const auto lines = critical_lines(P);
  std::vector<Table1Entry> out;
  std::vector<double> offsets;
  for (const auto& line : lines) {
    bool merged = false;
    for (std::size_t i = 0; i < offsets.size(); ++i)
      if (std::abs(offsets[i] - line.offset) < 1e-12) {
        out[i].lines.push_back(line.index);
        out[i].label += "gamma" + std::to_string(line.index);
        merged = true;
      }
    if (!merged) {
      offsets.push_back(line.offset);
      out.push_back({"gamma" + std::to_string(line.index), {line.index}, {}});
    }
  }
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i].result = monodromy_matrix(make_loop(P, h, offsets[i], ref), P, ref);
  return out;
}

}  // namespace euler2c
