#include "euler2c/knauf.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <numbers>
#include <sstream>

#include "euler2c/ode.hpp"

namespace euler2c {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_angle(double x) { return x - 2.0 * kPi * std::round(x / (2.0 * kPi)); }

struct HermiteTable {
  std::vector<double> r, V, dV;

  // value and derivative at radius x
  std::pair<double, double> eval(double x) const {
    if (x <= r.front()) return {V.front(), 0.0};
    if (x >= r.back()) return {0.0, 0.0};
    const auto it = std::upper_bound(r.begin(), r.end(), x);
    const std::size_t i = std::size_t(it - r.begin()) - 1;
    const double h = r[i + 1] - r[i], t = (x - r[i]) / h;
    const double t2 = t * t, t3 = t2 * t;
    const double v = (2 * t3 - 3 * t2 + 1) * V[i] + (t3 - 2 * t2 + t) * h * dV[i] + (-2 * t3 + 3 * t2) * V[i + 1] +
                     (t3 - t2) * h * dV[i + 1];
    const double d = ((6 * t2 - 6 * t) * V[i] + (3 * t2 - 4 * t + 1) * h * dV[i] + (-6 * t2 + 6 * t) * V[i + 1] +
                      (3 * t2 - 2 * t) * h * dV[i + 1]) /
                     h;
    return {v, d};
  }
};

}  // namespace

PlanarPotential zero_potential() {
  return {"zero", [](const Vec2&) { return 0.0; }, [](const Vec2&) { return Vec2::Zero().eval(); }, 0.0, 1.0};
}

PlanarPotential gaussian_bump(double V0, double width) {
  if (!(width > 0.0)) throw std::invalid_argument("gaussian_bump: width must be positive");
  const double w2 = width * width;
  PlanarPotential p;
  p.name = "gaussian";
  p.value = [=](const Vec2& q) { return V0 * std::exp(-q.squaredNorm() / (2.0 * w2)); };
  p.gradient = [=](const Vec2& q) { return Vec2(-V0 / w2 * std::exp(-q.squaredNorm() / (2.0 * w2)) * q); };
  p.sup = std::max(V0, 0.0);
  p.range = 12.0 * width;
  return p;
}

PlanarPotential tabulated_radial(const std::vector<double>& r, const std::vector<double>& V) {
  if (r.size() < 2 || r.size() != V.size()) throw std::invalid_argument("tabulated_radial: need matching samples");
  if (!std::is_sorted(r.begin(), r.end()) || r.front() < 0.0)
    throw std::invalid_argument("tabulated_radial: radii must be ascending and non-negative");
  auto tab = std::make_shared<HermiteTable>();
  tab->r = r;
  tab->V = V;
  tab->dV.resize(r.size());
  const std::size_t n = r.size();
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t a = i == 0 ? 0 : i - 1, b = i + 1 == n ? n - 1 : i + 1;
    tab->dV[i] = (V[b] - V[a]) / (r[b] - r[a]);
  }
  tab->dV.front() = 0.0;
  PlanarPotential p;
  p.name = "tabulated";
  p.value = [tab](const Vec2& q) { return tab->eval(q.norm()).first; };
  p.gradient = [tab](const Vec2& q) {
    const double x = q.norm();
    if (x == 0.0) return Vec2::Zero().eval();
    return Vec2(tab->eval(x).second / x * q);
  };
  p.sup = std::max(0.0, *std::max_element(V.begin(), V.end()));
  p.range = r.back();
  return p;
}

PlanarPotential tabulated_radial_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("tabulated_radial_csv: cannot open " + path);
  std::vector<double> r, V;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ss(line);
    double a, b;
    if (ss >> a >> b) {
      r.push_back(a);
      V.push_back(b);
    }
  }
  return tabulated_radial(r, V);
}

PlanarPotential make_potential(const std::string& name, double strength) {
  if (name == "zero" || name == "free") return zero_potential();
  if (name == "gaussian" || name == "gaussian-bump") return gaussian_bump(strength);
  if (name.rfind("tabulated:", 0) == 0) return tabulated_radial_csv(name.substr(10));
  if (name == "kepler" || name == "two-center")
    throw std::invalid_argument("make_potential: '" + name + "' is singular; the degree is not defined");
  throw std::invalid_argument("make_potential: unknown potential '" + name + "'");
}

namespace {

// Outgoing direction relative to the incoming one for impact parameter b.
double outgoing_angle(const PlanarPotential& V, double h, const Vec2& d, double b) {
  if (std::abs(b) >= V.range) return 0.0;
  using V4 = Eigen::Matrix<double, 4, 1>;
  const Vec2 n(-d.y(), d.x());
  const Vec2 q0 = -V.range * d + b * n;
  const double kin = h - V.value(q0);
  if (!(kin > 0.0)) throw std::invalid_argument("knauf_degree_planar: energy below the potential at the start");
  const double R = q0.norm();

  auto rhs = [&](double, const V4& y) {
    V4 dy;
    dy.head<2>() = y.tail<2>();
    dy.tail<2>() = -V.gradient(Vec2(y.head<2>()));
    return dy;
  };
  bool escaped = false;
  auto observer = [&](double, const V4& y) {
    escaped = y.head<2>().norm() > R && y.head<2>().dot(y.tail<2>()) > 0.0;
    return !escaped;
  };
  V4 y;
  y << q0, std::sqrt(2.0 * kin) * d;
  Dp5Options opt;
  opt.rtol = opt.atol = 1e-10;
  const double t_max = 200.0 * R / std::sqrt(2.0 * h);
  integrate_dp5<4>(rhs, 0.0, y, t_max, opt, observer);
  if (!escaped) throw TrappingError("knauf_degree_planar: h is trapping");
  const Vec2 p = y.tail<2>();
  return std::atan2(d.x() * p.y() - d.y() * p.x(), d.dot(p));
}

}  // namespace

KnaufSweep knauf_degree_planar(const PlanarPotential& V, double h, double direction, int samples) {
  if (!(h > 0.0)) throw std::invalid_argument("knauf_degree_planar: energy must be positive");
  const Vec2 d(std::cos(direction), std::sin(direction));
  KnaufSweep sw;
  sw.base_samples = samples;

  struct Node {
    double s, beta;
  };
  std::vector<Node> nodes{{-kPi / 2, 0.0}};
  for (int k = 0; k < samples; ++k) {
    const double s = -kPi / 2 + kPi * (k + 0.5) / samples;
    nodes.push_back({s, outgoing_angle(V, h, d, std::tan(s))});
  }
  nodes.push_back({kPi / 2, 0.0});

  std::vector<Node> refined{nodes.front()};
  std::function<void(const Node&, const Node&, int)> refine = [&](const Node& a, const Node& b, int depth) {
    if (std::abs(wrap_angle(b.beta - a.beta)) > 0.1 && depth < 40 && b.s - a.s > 1e-13) {
      const double s = 0.5 * (a.s + b.s);
      const Node m{s, outgoing_angle(V, h, d, std::tan(s))};
      ++sw.refined_samples;
      refine(a, m, depth + 1);
      refined.push_back(m);
      refine(m, b, depth + 1);
    }
  };
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    refine(nodes[i], nodes[i + 1], 0);
    refined.push_back(nodes[i + 1]);
  }

  double total = 0.0;
  for (std::size_t i = 0; i < refined.size(); ++i) {
    if (i > 0) total += wrap_angle(refined[i].beta - refined[i - 1].beta);
    sw.impact.push_back(std::tan(refined[i].s));
    sw.outgoing.push_back(total);
  }
  sw.impact.front() = -std::numeric_limits<double>::infinity();
  sw.impact.back() = std::numeric_limits<double>::infinity();
  // back-reflection winds clockwise in the counterclockwise angle convention
  sw.degree = -int(std::lround(total / (2.0 * kPi)));
  return sw;
}

}  // namespace euler2c
