#pragma once

#include <Eigen/Dense>

#include "sfiegarch/model.hpp"

namespace sfg {

/// Coefficient families of one spec, truncated at order m.
struct CoeffTable {
  Eigen::VectorXd lambda;      ///< lambda_{d,k}: alpha(z)/beta(z) (1-z^s)^{-d}
  Eigen::VectorXd pi;          ///< pi_{d,k}: (1-z^s)^{-d}
  Eigen::VectorXd f;           ///< alpha(z)/beta(z)
  Eigen::VectorXd tau;         ///< beta(z)(1-z^s)^d
  Eigen::VectorXd lambda_inv;  ///< beta(z)/alpha(z) (1-z^s)^d, empty if not invertible
  int m = 0;
  double d = 0.0;
  int s = 1;
};

/// Coefficients of (1 - z^s)^{-d} up to z^m.
Eigen::VectorXd seasonal_pi(double d, int s, int m);

/// Coefficients of alpha(z)/beta(z) up to z^m. Both arguments are full polynomials.
Eigen::VectorXd arma_ratio_coeffs(const Poly& alpha, const Poly& beta, int m);

/// lambda_{d,0..m} by the recurrence lambda_k = -alpha_k + sum_{i<k} lambda_i sum_j beta_j delta*_{d,(k-i-j)/s}.
Eigen::VectorXd lambda_recurrence(const SfiegarchSpec& spec, int m);

/// lambda_{d,0..m} as the product f * pi with f cut once it is below 1e-18 of its peak.
/// Agrees with lambda_recurrence to rounding and is O(m) for fixed p, q.
Eigen::VectorXd lambda_coefficients(const SfiegarchSpec& spec, int m);

/// s^{1-d} / (Gamma(d) K^{1-d}) alpha(1)/beta(1) with K = s k + r.
double lambda_asymptotic(const SfiegarchSpec& spec, int k, int r);

/// Smallest m with |lambda_k| < eps beyond m according to the asymptotic approximation.
double truncation_bound(const SfiegarchSpec& spec, double eps);

/// max(5000, truncation_bound(spec, 1e-4)) capped at 1e6.
int default_truncation(const SfiegarchSpec& spec);

/// Coefficients of beta(z)/alpha(z) (1-z^s)^d. Requires -1 < d < 0.5 and alpha free of roots in the closed disk.
Eigen::VectorXd inverse_lambda(const SfiegarchSpec& spec, int m);

/// psi_0..psi_m of (1 + sum varphi_j z^j) / (1 - sum phi_k z^k).
Eigen::VectorXd arma_psi_weights(const ArmaSpec& arma, int m);

/// Number of leading terms of alpha(z)/beta(z) needed before the geometric tail drops below tol.
int arma_ratio_length(const Poly& alpha, const Poly& beta, double tol = 1e-17);

CoeffTable build_coeff_table(const SfiegarchSpec& spec, int m);

}  // namespace sfg
