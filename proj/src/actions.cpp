#include "euler2c/actions.hpp"

#include <cmath>
#include <numbers>

#include "euler2c/quadrature.hpp"

namespace euler2c {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kQuadAbs = 1e-14;
constexpr double kQuadRel = 1e-13;

void require_critical_distance(const InvariantPoint& u, Coordinate kind, double strength) {
  if (critical_margin(kind, u, strength) < kBorderlineMargin)
    throw CriticalValueError("point lies on the critical set");
}

// (1/pi)-less head integral of (1 - chi) p_xi from xi_min to R + 1, with xi = xi_min + t^2.
QuadResult xi_head(const InvariantPoint& u, double s, double xi_min, double R) {
  const double c = xi_min - 1.0;
  auto integrand = [&](double t, bool bump) {
    const double xm1 = c + t * t;
    const double xi = 1.0 + xm1;
    const double w = xm1 * (xi + 1.0);
    const double N = w * (2.0 * u.h * xi * xi + 2.0 * s * xi - 2.0 * u.g) - u.l * u.l;
    if (!(N > 0.0) || w <= 0.0) return 0.0;
    double v = 2.0 * t * std::sqrt(N) / w;
    if (bump) v *= 1.0 - cutoff_bump(xi, R);
    return v;
  };
  const double tR = std::sqrt(R - xi_min), tR1 = std::sqrt(R + 1.0 - xi_min);
  QuadResult a = integrate_gk([&](double t) { return integrand(t, false); }, 0.0, tR, kQuadAbs, kQuadRel);
  QuadResult b = integrate_gk([&](double t) { return integrand(t, true); }, tR, tR1, kQuadAbs, kQuadRel);
  return {a.value + b.value, a.error + b.error, a.evaluations + b.evaluations};
}

}  // namespace

std::string to_string(ReferenceChoice r) {
  switch (r) {
    case ReferenceChoice::KeplerAtO1: return "KeplerAtO1";
    case ReferenceChoice::KeplerAtO2: return "KeplerAtO2";
    case ReferenceChoice::SelfReference: return "SelfReference";
  }
  return "unknown";
}

ReferenceChoice parse_reference(const std::string& s) {
  if (s == "o1" || s == "KeplerAtO1" || s == "r1") return ReferenceChoice::KeplerAtO1;
  if (s == "o2" || s == "KeplerAtO2" || s == "r2") return ReferenceChoice::KeplerAtO2;
  if (s == "self" || s == "SelfReference") return ReferenceChoice::SelfReference;
  throw std::invalid_argument("unknown reference '" + s + "'");
}

double reference_strength(const Params& P, ReferenceChoice r) {
  switch (r) {
    case ReferenceChoice::KeplerAtO1: return P.mu1 - P.mu2;
    case ReferenceChoice::KeplerAtO2: return P.mu2 - P.mu1;
    case ReferenceChoice::SelfReference: break;
  }
  throw std::invalid_argument("reference_strength: SelfReference has two centers");
}

double reference_xi_strength(const Params& P, ReferenceChoice r) {
  return r == ReferenceChoice::SelfReference ? P.sum() : reference_strength(P, r);
}

double cutoff_bump(double xi, double R) {
  const double x = xi - R;
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / x), b = std::exp(-1.0 / (1.0 - x));
  return a / (a + b);
}

Interval turning_points(Coordinate kind, const InvariantPoint& f, double strength) {
  const auto iv = allowed_intervals(kind, f, strength);
  if (kind == Coordinate::Eta) {
    if (iv.empty()) throw NonPhysicalError("turning_points: eta-motion forbidden");
    if (iv.size() > 1) throw NonPhysicalError("turning_points: eta-motion has several components");
  } else if (iv.empty() || !iv.back().unbounded()) {
    throw NonPhysicalError("turning_points: no unbounded xi-motion");
  }
  require_critical_distance(f, kind, strength);
  return iv.back();
}

ActionValue action_I_eta(const InvariantPoint& f, const Params& P) {
  const InvariantPoint u = to_unit_separation(f, P.a);
  const double s = P.diff();
  const Interval iv = turning_points(Coordinate::Eta, u, s);
  const double m = 0.5 * (iv.lo + iv.hi), w = 0.5 * (iv.hi - iv.lo);
  const double gap_hi = 1.0 - iv.hi, gap_lo = 1.0 + iv.lo;

  auto integrand = [&](double th) {
    const double sn = std::sin(th);
    const double eta = m + w * sn;
    // 1 - eta and 1 + eta without cancellation near the poles
    const double one_minus = gap_hi + 2.0 * w * std::pow(std::sin(kPi / 4 - th / 2), 2);
    const double one_plus = gap_lo + 2.0 * w * std::pow(std::sin(kPi / 4 + th / 2), 2);
    const double d = one_minus * one_plus;
    const double N = d * (-2.0 * u.h * eta * eta - 2.0 * s * eta + 2.0 * u.g) - u.l * u.l;
    if (!(N > 0.0) || d <= 0.0) return 0.0;
    return std::sqrt(N) / d * w * std::cos(th);
  };
  const QuadResult q = integrate_gk(integrand, -kPi / 2, kPi / 2, kQuadAbs, kQuadRel);
  const double scale = std::sqrt(P.a) / kPi;
  return {q.value * scale, q.error * scale};
}

double default_cutoff(const InvariantPoint& f, const Params& P, ReferenceChoice ref) {
  const InvariantPoint u = to_unit_separation(f, P.a);
  const double xo = turning_points(Coordinate::Xi, u, P.sum()).lo;
  const double xr = turning_points(Coordinate::Xi, u, reference_xi_strength(P, ref)).lo;
  return 10.0 * std::max({1.0, xo, xr});
}

ActionValue action_I_xi_mod(const InvariantPoint& f, const Params& P, ReferenceChoice ref, double R) {
  if (!(f.h > 0.0)) throw NonPhysicalError("action_I_xi_mod: requires positive energy");
  if (ref == ReferenceChoice::SelfReference) return {0.0, 0.0};
  if (ref == ReferenceChoice::KeplerAtO1)
    return action_I_xi_mod(f, P.mirrored(), ReferenceChoice::KeplerAtO2, R);

  const InvariantPoint u = to_unit_separation(f, P.a);
  const double so = P.sum(), sr = reference_xi_strength(P, ref);
  const double xo = turning_points(Coordinate::Xi, u, so).lo;
  const double xr = turning_points(Coordinate::Xi, u, sr).lo;
  if (R <= 0.0) R = 10.0 * std::max({1.0, xo, xr});
  if (!(R > std::max(xo, xr))) throw std::invalid_argument("action_I_xi_mod: cutoff below turning point");

  const QuadResult a = xi_head(u, so, xo, R);
  const QuadResult b = xi_head(u, sr, xr, R);
  const double scale = std::sqrt(P.a) / kPi;
  return {(a.value - b.value) * scale, (a.error + b.error) * scale};
}

ActionTriple actions(const InvariantPoint& f, const Params& P, ReferenceChoice ref, double R) {
  ActionTriple t;
  t.I_phi = f.l;
  const ActionValue e = action_I_eta(f, P);
  const ActionValue x = action_I_xi_mod(f, P, ref, R);
  t.I_eta = e.value;
  t.err_eta = e.error;
  t.I_xi_mod = x.value;
  t.err_xi = x.error;
  return t;
}

DlLimit dl_limit(ActionKind kind, double h, double g, const Params& P, ReferenceChoice ref, double eps) {
  for (const auto& line : critical_lines(P))
    if (std::abs(g - h - line.offset) < 1e-6)
      throw CriticalValueError("dl_limit: (h, g) lies on a critical line");

  double R = 0.0;
  if (kind == ActionKind::XiMod && ref != ReferenceChoice::SelfReference)
    R = default_cutoff({h, eps, g}, P, ref);

  auto I = [&](double l) {
    const InvariantPoint f{h, l, g};
    return kind == ActionKind::Eta ? action_I_eta(f, P).value : action_I_xi_mod(f, P, ref, R).value;
  };

  DlLimit out;
  const double delta = 0.5 * eps;
  for (int k = 0; k < 3; ++k) {
    const double l = eps * double(1 << k);
    out.derivatives[k] = (I(l + delta) - I(l - delta)) / (2.0 * delta);
  }
  out.extrapolants[0] = 2.0 * out.derivatives[0] - out.derivatives[1];
  out.extrapolants[1] = 2.0 * out.derivatives[1] - out.derivatives[2];
  out.value = out.extrapolants[0];
  out.converged = std::abs(out.extrapolants[0] - out.extrapolants[1]) < kDlConvergence;
  return out;
}

}  // namespace euler2c
