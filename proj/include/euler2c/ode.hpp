#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <limits>

namespace euler2c {

struct Dp5Options {
  double rtol = 1e-10;
  double atol = 1e-10;
  double h_initial = 0.0;  // 0 selects a heuristic first step
  double h_max = std::numeric_limits<double>::infinity();
  /// relative step-size floor; below it the integration is abandoned
  double h_min_rel = 1e-14;
  long max_steps = 10'000'000;
};

enum class Dp5Status { Finished, Stopped, StepUnderflow, MaxSteps };

/// Dormand-Prince 5(4) with FSAL and PI step-size control.
///
/// `rhs(t, y)` returns dy/dt. After every accepted step `observer(t, y)` is called;
/// returning false stops the integration with status Stopped.
template <int N, class Rhs, class Observer>
Dp5Status integrate_dp5(Rhs&& rhs, double t0, Eigen::Matrix<double, N, 1>& y, double t_end,
                        const Dp5Options& opt, Observer&& observer, double* t_out = nullptr) {
  using V = Eigen::Matrix<double, N, 1>;
  constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                   a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                   a65 = -5103.0 / 18656;
  constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                   b6 = 11.0 / 84;
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                   e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  constexpr double safety = 0.9, beta = 0.04, expo1 = 0.2 - beta * 0.75;
  constexpr double fac_min = 0.2, fac_max = 10.0;

  double t = t0;
  const double dir = t_end >= t0 ? 1.0 : -1.0;
  V k1 = rhs(t, y);

  auto err_norm = [&](const V& err, const V& y0, const V& y1) {
    double m = 0.0;
    for (int i = 0; i < y0.size(); ++i) {
      const double sc = opt.atol + opt.rtol * std::max(std::abs(y0(i)), std::abs(y1(i)));
      m = std::max(m, std::abs(err(i)) / sc);
    }
    return m;
  };

  double h = opt.h_initial;
  if (h <= 0.0) {
    const double d0 = y.norm(), d1 = k1.norm();
    h = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    h = std::min(h, std::abs(t_end - t0));
  }
  h = std::min(h, opt.h_max) * dir;

  double facold = 1e-4;
  long steps = 0;
  auto finish = [&](Dp5Status s) {
    if (t_out) *t_out = t;
    return s;
  };

  while (dir * (t_end - t) > 0.0) {
    if (++steps > opt.max_steps) return finish(Dp5Status::MaxSteps);
    if (std::abs(h) < opt.h_min_rel * std::max(1.0, std::abs(t))) return finish(Dp5Status::StepUnderflow);
    if (dir * (t + h - t_end) > 0.0) h = t_end - t;

    const V k2 = rhs(t + c2 * h, V(y + h * a21 * k1));
    const V k3 = rhs(t + c3 * h, V(y + h * (a31 * k1 + a32 * k2)));
    const V k4 = rhs(t + c4 * h, V(y + h * (a41 * k1 + a42 * k2 + a43 * k3)));
    const V k5 = rhs(t + c5 * h, V(y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4)));
    const V k6 = rhs(t + h, V(y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5)));
    const V y1 = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const V k7 = rhs(t + h, y1);
    const V err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    const double en = err_norm(err, y, y1);
    if (!std::isfinite(en)) {
      h *= fac_min;
      continue;
    }
    const double fac11 = std::pow(en, expo1);
    if (en <= 1.0) {
      double fac = fac11 / std::pow(facold, beta);
      fac = std::clamp(fac / safety, 1.0 / fac_max, 1.0 / fac_min);
      facold = std::max(en, 1e-4);
      t += h;
      y = y1;
      k1 = k7;
      if (!observer(t, static_cast<const V&>(y))) return finish(Dp5Status::Stopped);
      h = dir * std::min(std::abs(h / fac), opt.h_max);
    } else {
      h /= std::min(1.0 / fac_min, fac11 / safety);
    }
  }
  return finish(Dp5Status::Finished);
}

}  // namespace euler2c
