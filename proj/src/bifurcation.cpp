#include "euler2c/bifurcation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "euler2c/polynomial.hpp"

namespace euler2c {

InvariantPoint to_unit_separation(const InvariantPoint& f, double a) {
  const double h = a * f.h;
  return {h, f.l / std::sqrt(a), h + (f.g - f.h) / a};
}

namespace {

InvariantPoint from_unit_separation(const InvariantPoint& f, double a) {
  const double h = f.h / a;
  return {h, f.l * std::sqrt(a), h + a * (f.g - f.h)};
}

constexpr double kInf = std::numeric_limits<double>::infinity();

// Sub-interval of (lo, hi) on which sigma * (s + 2 h v) <= 0.
bool linear_subrange(double lo, double hi, double s, double h, double sigma, double& out_lo, double& out_hi) {
  out_lo = lo;
  out_hi = hi;
  const double A = sigma * 2.0 * h, B = sigma * s;  // need A v + B <= 0
  if (A == 0.0) return B <= 0.0;
  const double r = -B / A;
  if (A > 0.0)
    out_hi = std::min(hi, r);
  else
    out_lo = std::max(lo, r);
  return out_lo < out_hi;
}

InvariantPoint separable_critical_point(double v, double h, double s) {
  const double l2 = -(s + 2.0 * h * v) * (v * v - 1.0) * (v * v - 1.0) / v;
  const double g = h * (2.0 * v * v - 1.0) + s * (3.0 * v * v - 1.0) / (2.0 * v);
  return {h, std::sqrt(std::max(l2, 0.0)), g};
}

}  // namespace

std::array<CriticalLine, 3> critical_lines(const Params& P) {
  return {CriticalLine{1, P.a * (P.mu2 - P.mu1)}, CriticalLine{2, P.a * (P.mu1 - P.mu2)},
          CriticalLine{3, P.a * (P.mu1 + P.mu2)}};
}

std::vector<Interval> allowed_intervals(Coordinate kind, const InvariantPoint& f, double strength) {
  const double lo = kind == Coordinate::Xi ? 1.0 : -1.0;
  const double hi = kind == Coordinate::Xi ? kInf : 1.0;
  const Eigen::VectorXd c = momentum_numerator_coeffs(f, strength);

  std::vector<double> pts{lo};
  for (double r : real_roots(c))
    if (r > lo + 1e-13 && r < hi - 1e-13) pts.push_back(r);
  pts.push_back(hi);

  std::vector<Interval> out;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double a = pts[i], b = pts[i + 1];
    if (!(b > a)) continue;
    const double mid = std::isinf(b) ? std::max(2.0 * a, a + 1.0) : 0.5 * (a + b);
    if (momentum_numerator(mid, f, strength) < 0.0) continue;
    if (!out.empty() && out.back().hi == a)
      out.back().hi = b;
    else
      out.push_back({a, b});
  }
  return out;
}

double critical_margin(Coordinate kind, const InvariantPoint& f, double strength) {
  const double lo = kind == Coordinate::Xi ? 1.0 : -1.0;
  const double hi = kind == Coordinate::Xi ? kInf : 1.0;
  const Eigen::VectorXd c = momentum_numerator_coeffs(f, strength);
  Eigen::VectorXd dc(4);
  for (int k = 0; k < 4; ++k) dc(k) = double(k + 1) * c(k + 1);

  double m = kInf;
  for (double v : real_roots(dc)) {
    if (!(v > lo && v < hi) || std::abs(v * v - 1.0) < 1e-6) continue;
    const double w = v * v - 1.0;
    const double grad = std::sqrt(4.0 * v * v * v * v * w * w + 4.0 * f.l * f.l + 4.0 * w * w);
    m = std::min(m, std::abs(momentum_numerator(v, f, strength)) / grad);
  }
  // l = 0 lines, where a root of the quadratic factor reaches v = +-1
  auto line = [&](double offset) { return std::hypot((f.g - f.h - offset) / std::sqrt(2.0), f.l); };
  m = std::min(m, line(strength));
  if (kind == Coordinate::Eta) m = std::min(m, line(-strength));
  return m;
}

PhysicalClassification classify(const InvariantPoint& f, const Params& P) {
  const InvariantPoint u = to_unit_separation(f, P.a);
  PhysicalClassification c;
  c.xi_intervals = allowed_intervals(Coordinate::Xi, u, P.sum());
  c.eta_intervals = allowed_intervals(Coordinate::Eta, u, P.diff());
  c.physical = !c.xi_intervals.empty() && !c.eta_intervals.empty();
  c.scattering = c.physical && c.xi_intervals.back().unbounded();
  c.margin = std::min(critical_margin(Coordinate::Xi, u, P.sum()), critical_margin(Coordinate::Eta, u, P.diff()));
  c.borderline = c.margin < kBorderlineMargin;
  return c;
}

std::vector<CriticalCurve> critical_curves_planar(const Params& P, const CurveSampling& s) {
  std::vector<CriticalCurve> out;
  const int n = std::max(s.count, 2);
  const double mu = P.sum(), nu = P.diff();

  if (mu != 0.0) {
    CriticalCurve c{"lambda", {}};
    for (int k = 0; k < n; ++k) {
      const double lam = s.lambda_max * k / (n - 1);
      const InvariantPoint u{-mu / (2.0 * std::cosh(lam)), 0.0, mu * std::cosh(lam) / 2.0};
      c.samples.push_back({lam, from_unit_separation(u, P.a), !allowed_intervals(Coordinate::Eta, u, nu).empty()});
    }
    out.push_back(std::move(c));
  }
  if (nu != 0.0) {
    CriticalCurve c{"nu", {}};
    for (int k = 0; k < n; ++k) {
      const double th = -std::numbers::pi / 2 + std::numbers::pi * (k + 0.5) / n;
      const InvariantPoint u{-nu / (2.0 * std::sin(th)), 0.0, nu * std::sin(th) / 2.0};
      c.samples.push_back({th, from_unit_separation(u, P.a), !allowed_intervals(Coordinate::Xi, u, mu).empty()});
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<CriticalCurve> critical_curves_spatial(const Params& P, double h_in, const CurveSampling& s) {
  std::vector<CriticalCurve> out;
  const int n = std::max(s.count, 2);
  const double h = P.a * h_in;
  const double mu = P.sum(), nu = P.diff();

  auto emit = [&](const std::string& fam, double lo, double hi, double strength, double other_strength,
                  Coordinate other) {
    CriticalCurve pos{fam, {}}, neg{fam, {}};
    for (int k = 0; k < n; ++k) {
      const double v = lo + (hi - lo) * (k + 0.5) / n;
      const InvariantPoint u = separable_critical_point(v, h, strength);
      const bool phys = !allowed_intervals(other, u, other_strength).empty();
      const InvariantPoint f = from_unit_separation(u, P.a);
      pos.samples.push_back({v, f, phys});
      neg.samples.push_back({v, {f.h, -f.l, f.g}, phys});
    }
    out.push_back(std::move(pos));
    out.push_back(std::move(neg));
  };

  double lo, hi;
  if (linear_subrange(1.0, s.xi_cap, mu, h, 1.0, lo, hi)) emit("xi", lo, hi, mu, nu, Coordinate::Eta);
  if (linear_subrange(0.0, 1.0, nu, h, 1.0, lo, hi)) emit("eta", lo, hi, nu, mu, Coordinate::Xi);
  if (linear_subrange(-1.0, 0.0, nu, h, -1.0, lo, hi)) emit("eta", lo, hi, nu, mu, Coordinate::Xi);
  return out;
}

}  // namespace euler2c
