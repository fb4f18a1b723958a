#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "sfiegarch/model.hpp"
#include "sfiegarch/optimize.hpp"

namespace sfg {

/// Output of the log-variance recursion over a residual series.
struct VolatilityFilter {
  Eigen::VectorXd ln_sigma2;
  Eigen::VectorXd sigma2;
  Eigen::VectorXd z;
  Eigen::VectorXd g;              ///< g(z_t) with the recursion's E|Z|
  Eigen::VectorXd contributions;  ///< per-observation log-likelihood terms
  double loglik = 0.0;
  bool finite = true;
};

/// ln sigma_t^2 = omega + sum_{k=0}^{t-1} lambda_k g(z_{t-1-k}) with g = 0 before the sample.
/// Runs through alpha/beta and (1-B^s)^{-d} filters, which equals the truncated lambda sum exactly.
VolatilityFilter volatility_filter(const SfiegarchSpec& spec, const Eigen::VectorXd& x, double abs_mean_z);

/// Gaussian quasi log-likelihood of mean-adjusted residuals x under spec.
double quasi_loglik(const SfiegarchSpec& spec, const Eigen::VectorXd& x, double abs_mean_z);

struct InfoCriteria {
  double aic = 0.0;
  double bic = 0.0;
  double hqc = 0.0;
};
InfoCriteria info_criteria(double loglik, int k, long n);

struct RobustCovariance {
  Eigen::MatrixXd cov;      ///< H^{-1} B H^{-1} with sums over observations
  Eigen::MatrixXd hessian;  ///< Hessian of the total log-likelihood
  Eigen::MatrixXd opg;      ///< outer product of per-observation scores
  bool singular = false;    ///< pseudo-inverse was needed
};

/// Sandwich covariance from a per-observation contribution function at params.
RobustCovariance robust_covariance(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& contributions,
                                   const Eigen::VectorXd& params);

/// Free lags of the constrained mean equation.
struct ArmaLagSets {
  std::vector<int> ar;
  std::vector<int> ma;
  bool include_mean = true;
};

struct ArmaFitOptions {
  bool eliminate = true;   ///< backward elimination of non-significant terms
  double level = 0.05;     ///< remove while the largest p-value is >= level
  int max_iter = 2000;
};

struct ArmaFit {
  ArmaSpec arma;
  Eigen::VectorXd residuals;
  double sigma2 = 0.0;
  std::vector<std::string> names;  ///< "mu", "ar7", "ma13", ...
  Eigen::VectorXd estimates;
  Eigen::VectorXd se;
  Eigen::VectorXd pvalues;  ///< two-sided, normal approximation
  std::vector<std::string> removed;
  int n_params() const { return static_cast<int>(names.size()); }
};

/// x_t = r_t - mu - sum phi_k (r_{t-k} - mu) - sum varphi_j x_{t-j}; presample r = presample_r, x = 0.
Eigen::VectorXd arma_residuals(const ArmaSpec& arma, const Eigen::VectorXd& r, double presample_r);

ArmaFit fit_arma(const Eigen::VectorXd& r, const ArmaLagSets& lags, const ArmaFitOptions& opt = {});

struct VolatilityConfig {
  int s = 1;
  int p = 0;
  int q = 0;
  bool estimate_d = true;
  double fixed_d = 0.0;  ///< used when estimate_d is false
  double abs_mean_z = 0.7978845608028654;  ///< E|Z| in the recursion, sqrt(2/pi) for Gaussian QML
  InnovationDist innovation;  ///< recorded in spec_hat
  int max_iter = 2000;
  double tol = 1e-8;
  std::optional<SfiegarchSpec> start;
};

struct FitResult {
  SfiegarchSpec spec_hat;
  ArmaSpec arma_hat;
  double loglik = 0.0;
  std::vector<std::string> names;  ///< order of cov_robust rows
  Eigen::VectorXd estimates;
  Eigen::MatrixXd cov_robust;
  Eigen::VectorXd se;
  double aic = 0.0, bic = 0.0, hqc = 0.0;
  int k = 0;  ///< parameter count used by the criteria, mean equation included
  Eigen::VectorXd returns;       ///< data the mean equation was fitted to
  Eigen::VectorXd residuals_x;
  Eigen::VectorXd residuals_z;
  Eigen::VectorXd sigma2_fitted;
  double abs_mean_z = 0.0;
  bool converged = false;
  bool hessian_singular = false;
  int iterations = 0;
  std::optional<ArmaFit> arma_fit;  ///< mean-equation details when fitted in two steps
};

/// Parameter names in the order [d], theta, gamma, omega, alpha_i, beta_j.
std::vector<std::string> volatility_param_names(const VolatilityConfig& cfg);
Eigen::VectorXd pack_volatility(const SfiegarchSpec& spec, const VolatilityConfig& cfg);
SfiegarchSpec unpack_volatility(const Eigen::VectorXd& v, const VolatilityConfig& cfg);

/// Unconstrained coordinates: d = -1 + 1.5 logistic(u), the rest unchanged.
Eigen::VectorXd to_unconstrained(const Eigen::VectorXd& v, const VolatilityConfig& cfg);
Eigen::VectorXd from_unconstrained(const Eigen::VectorXd& u, const VolatilityConfig& cfg);

/// QML fit of the volatility equation to residuals x (mean already removed).
FitResult fit_sfiegarch(const Eigen::VectorXd& x, const VolatilityConfig& cfg);

/// Mean equation then volatility equation. Criteria count the parameters of both.
FitResult fit_two_step(const Eigen::VectorXd& r, const ArmaLagSets& lags, const VolatilityConfig& cfg,
                       const ArmaFitOptions& arma_opt = {});

}  // namespace sfg
