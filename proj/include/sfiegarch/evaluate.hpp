#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "sfiegarch/model.hpp"

namespace sfg {

struct ErrorMeasures {
  double mae = 0.0;
  double mpe = 0.0;
  double max_ae = 0.0;
  int mpe_skipped = 0;       ///< terms with |actual| < 1e-12
  bool mpe_defined = true;   ///< false when every term was skipped
};
ErrorMeasures error_measures(const Eigen::VectorXd& actual, const Eigen::VectorXd& predicted);

struct DieboldMariano {
  double stat = 0.0;
  double pvalue = 1.0;
  bool degenerate = false;  ///< zero mean and zero long-run variance
};
/// Loss differential d_t; Bartlett long-run variance truncated at lag h-1.
DieboldMariano diebold_mariano(const Eigen::VectorXd& loss_diff, int h);

/// (1/n) sum ln f(y_t | mu_t, sigma2_t) under a unit-variance innovation law.
double predictive_loglik(const Eigen::VectorXd& actual, const Eigen::VectorXd& mu, const Eigen::VectorXd& sigma2,
                         const InnovationDist& dist);

struct MincerZarnowitz {
  double gamma0 = 0.0;
  double gamma1 = 0.0;
  double se0 = 0.0;  ///< Newey-West standard errors times lambda_correction
  double se1 = 0.0;
  double lambda_correction = 1.0;  ///< sqrt(1 + n_p / n_fit)
  double wald = 0.0;               ///< test of (gamma0, gamma1) = (0, 1)
  double wald_pvalue = 1.0;
};
MincerZarnowitz mincer_zarnowitz(const Eigen::VectorXd& actual, const Eigen::VectorXd& predicted, long n_fit,
                                 int hac_lags);

struct PortmanteauRow {
  int lag = 0;
  int df = 0;
  double bp = 0.0;
  double bp_pvalue = 1.0;
  double lb = 0.0;
  double lb_pvalue = 1.0;
};
/// Box-Pierce and Ljung-Box statistics at each requested lag, df = lag - fitted_params (at least 1).
std::vector<PortmanteauRow> portmanteau(const Eigen::VectorXd& x, std::span<const int> lags, int fitted_params);

/// Sample autocorrelations rho_1..rho_max of a demeaned series.
Eigen::VectorXd sample_acf(const Eigen::VectorXd& x, int max_lag);

struct CumulativePeriodogram {
  double stat = 0.0;      ///< max deviation from the uniform line
  double critical = 0.0;  ///< 5% band
  bool reject = false;
  bool degenerate = false;
};
CumulativePeriodogram cumulative_periodogram(const Eigen::VectorXd& x);

struct KsResult {
  double stat = 0.0;
  double pvalue = 1.0;
};
/// One-sample Kolmogorov-Smirnov test against U(0,1), asymptotic p-value.
KsResult ks_uniform(std::vector<double> u);

/// 1 - K(t) for the Kolmogorov distribution, series truncated at 100 terms.
double kolmogorov_sf(double t);

struct DensityTransformRow {
  double nu = 2.0;
  double stat = 0.0;
  double pvalue = 1.0;
};
struct DensityTransformResult {
  std::vector<DensityTransformRow> rows;
  bool degenerate = false;
};
/// PIT u_t = F_nu(x_t / sigma_t) per nu and a KS test of uniformity.
DensityTransformResult density_transform_test(const Eigen::VectorXd& x, const Eigen::VectorXd& sigma2,
                                              std::span<const double> nu_grid);

struct RealizedSeries {
  Eigen::VectorXd daily_returns;  ///< r^{(d)}_t, sum of intraday returns
  Eigen::VectorXd daily_vol;      ///< v_t
  std::vector<int> counts;        ///< M_t
  /// v_{t-1}[h] = v_t + ... + v_{t+h-1} with t 0-based.
  double window(int t, int h) const;
};
RealizedSeries realized_volatility(const Eigen::VectorXd& intraday, std::span<const int> day_counts);

/// Upper tail of chi-squared with df degrees of freedom.
double chi2_sf(double x, double df);

}  // namespace sfg
