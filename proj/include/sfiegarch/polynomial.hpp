#pragma once

#include <Eigen/Dense>
#include <span>

namespace sfg {

/// Coefficients c_0 + c_1 z + ... stored with the constant term first.
using Poly = Eigen::VectorXd;

/// Lag polynomial 1 - sum_i c_i z^i.
Poly lag_polynomial(std::span<const double> c);

/// Lag polynomial 1 - sum_k c_k z^k from a sparse (lag, coefficient) list.
Poly lag_polynomial(std::span<const std::pair<int, double>> c);

/// Drop trailing (near) zero coefficients, keeping at least the constant term.
Poly trim(const Poly& p, double tol = 0.0);

/// Complex roots via companion-matrix eigenvalues. Empty for constants.
Eigen::VectorXcd roots(const Poly& p);

/// Smallest root modulus, +inf for constant polynomials.
double min_root_modulus(const Poly& p);

/// |Res(a, b)| / (|lc a|^deg b |lc b|^deg a), zero exactly when a and b share a root.
double normalized_resultant(const Poly& a, const Poly& b);

/// Value at a complex point.
std::complex<double> evaluate(const Poly& p, std::complex<double> z);

/// First m+1 coefficients of num(z)/den(z). Requires den(0) != 0.
Eigen::VectorXd series_divide(const Poly& num, const Poly& den, int m);

/// First m+1 coefficients of a(z)b(z).
Eigen::VectorXd series_multiply(const Eigen::VectorXd& a, const Eigen::VectorXd& b, int m);

}  // namespace sfg
