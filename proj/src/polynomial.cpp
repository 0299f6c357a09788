#include "euler2c/polynomial.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace euler2c {

double poly_eval(const Eigen::VectorXd& c, double x) {
  double r = 0.0;
  for (Eigen::Index k = c.size() - 1; k >= 0; --k) r = r * x + c(k);
  return r;
}

double poly_deriv(const Eigen::VectorXd& c, double x) {
  double r = 0.0;
  for (Eigen::Index k = c.size() - 1; k >= 1; --k) r = r * x + double(k) * c(k);
  return r;
}

std::vector<double> real_roots(const Eigen::VectorXd& c, double imag_tol) {
  const double scale = c.cwiseAbs().maxCoeff();
  Eigen::Index n = c.size() - 1;
  while (n > 0 && std::abs(c(n)) <= 1e-14 * scale) --n;
  std::vector<double> roots;
  if (n <= 0) return roots;
  if (n == 1) {
    roots.push_back(-c(0) / c(1));
    return roots;
  }

  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(n, n);
  C.bottomLeftCorner(n - 1, n - 1).setIdentity();
  for (Eigen::Index k = 0; k < n; ++k) C(k, n - 1) = -c(k) / c(n);
  const Eigen::VectorXcd ev = Eigen::EigenSolver<Eigen::MatrixXd>(C, false).eigenvalues();

  const Eigen::VectorXd cn = c.head(n + 1);
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (std::abs(ev(i).imag()) > imag_tol * (1.0 + std::abs(ev(i).real()))) continue;
    double x = ev(i).real();
    for (int it = 0; it < 8; ++it) {
      const double d = poly_deriv(cn, x);
      if (d == 0.0) break;
      const double step = poly_eval(cn, x) / d;
      const double xn = x - step;
      if (std::abs(poly_eval(cn, xn)) > std::abs(poly_eval(cn, x))) break;
      x = xn;
      if (std::abs(step) <= 1e-16 * (1.0 + std::abs(x))) break;
    }
    roots.push_back(x);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace euler2c
