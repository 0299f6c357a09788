#pragma once

#include <array>
#include <cmath>
#include <utility>
#include <vector>

namespace euler2c {

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  int evaluations = 0;
};

namespace detail {

inline constexpr std::array<double, 8> kGkNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class F>
std::pair<double, double> gk15(F& f, double a, double b) {
  const double c = 0.5 * (a + b), hw = 0.5 * (b - a);
  const double fc = f(c);
  double k = fc * kKronrodWeights[7];
  double g = fc * kGaussWeights[3];
  for (int i = 0; i < 7; ++i) {
    const double x = hw * kGkNodes[i];
    const double s = f(c - x) + f(c + x);
    k += kKronrodWeights[i] * s;
    if (i % 2 == 1) g += kGaussWeights[i / 2] * s;
  }
  return {k * hw, std::abs((k - g) * hw)};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod 7-15 on [a, b]: the interval with the largest
/// error estimate is bisected until the total estimate meets the tolerance.
template <class F>
QuadResult integrate_gk(F&& f, double a, double b, double abs_tol = 1e-12, double rel_tol = 1e-12,
                        int max_intervals = 2000) {
  struct Piece {
    double a, b, value, error;
  };
  std::vector<Piece> pieces;
  QuadResult out;
  auto [v0, e0] = detail::gk15(f, a, b);
  pieces.push_back({a, b, v0, e0});
  out.evaluations = 15;
  double total = v0, err = e0;
  while (err > std::max(abs_tol, rel_tol * std::abs(total)) && int(pieces.size()) < max_intervals) {
    std::size_t worst = 0;
    for (std::size_t i = 1; i < pieces.size(); ++i)
      if (pieces[i].error > pieces[worst].error) worst = i;
    const Piece p = pieces[worst];
    const double m = 0.5 * (p.a + p.b);
    auto [vl, el] = detail::gk15(f, p.a, m);
    auto [vr, er] = detail::gk15(f, m, p.b);
    out.evaluations += 30;
    pieces[worst] = {p.a, m, vl, el};
    pieces.push_back({m, p.b, vr, er});
    total = 0.0;
    err = 0.0;
    for (const auto& q : pieces) {
      total += q.value;
      err += q.error;
    }
  }
  out.value = total;
  out.error = err;
  return out;
}

}  // namespace euler2c
