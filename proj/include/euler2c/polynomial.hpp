#pragma once

#include <Eigen/Core>

#include <vector>

namespace euler2c {

/// Evaluate sum_k c(k) x^k.
double poly_eval(const Eigen::VectorXd& c, double x);
double poly_deriv(const Eigen::VectorXd& c, double x);

/// Real roots of sum_k c(k) x^k, ascending, from the companion-matrix eigenvalues
/// followed by Newton polishing. Trailing (highest) zero coefficients lower the degree.
/// Complex pairs with |Im| below `imag_tol` (relative) are kept as real double roots.
std::vector<double> real_roots(const Eigen::VectorXd& c, double imag_tol = 1e-6);

}  // namespace euler2c
