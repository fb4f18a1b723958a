#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "sfiegarch/estimate.hpp"
#include "sfiegarch/model.hpp"

namespace sfg {

struct ForecastSet {
  int horizon = 1;
  double sigma2_hat = 0.0;     ///< conditional expectation predictor
  double sigma2_check = 0.0;   ///< exp of the log-variance predictor
  double sigma2_tilde = 0.0;   ///< second-order Taylor corrected predictor
  double ln_sigma2_hat = 0.0;
  double r_hat = 0.0;
  double r2_hat = 0.0;
  double mse_sigma2 = 0.0;
  double mse_x2 = 0.0;
  double mse_ln = 0.0;
  std::vector<double> e_table;  ///< E(l), l = 0..h-2
  double sigma_g_sq_hat = 0.0;
};

enum class ExpectationMode {
  sample,    ///< averages of exp{lambda_l g(z_t)} over fitted residuals
  analytic,  ///< g_mgf under the fitted innovation law
};

struct ForecastOptions {
  ExpectationMode mode = ExpectationMode::sample;
  bool with_mse = true;  ///< mse_sigma2 and mse_x2 need moment products
};

/// Fit-like record built from a known spec and an observed residual history, for validation runs.
FitResult conditioning_history(const SfiegarchSpec& spec, const ArmaSpec& arma, const Eigen::VectorXd& r,
                               double abs_mean_z);

/// Forecasts at horizons 1..max_h from the end of the fitted sample.
class Forecaster {
 public:
  Forecaster(const FitResult& fit, int max_h, const ForecastOptions& opt = {});

  const std::vector<ForecastSet>& sets() const { return sets_; }
  const ForecastSet& at(int h) const;
  const Eigen::VectorXd& psi() const { return psi_; }
  const Eigen::VectorXd& lambda() const { return lam_; }

 private:
  std::vector<ForecastSet> sets_;
  Eigen::VectorXd psi_;
  Eigen::VectorXd lam_;
};

std::vector<ForecastSet> forecast(const FitResult& fit, int max_h, const ForecastOptions& opt = {});
double forecast_ln_sigma2(const FitResult& fit, int h);
ForecastSet forecast_sigma2(const FitResult& fit, int h, const ForecastOptions& opt = {});
double forecast_r(const FitResult& fit, int h);
double forecast_r2(const FitResult& fit, int h);

struct AggregateForecast {
  double r_sum = 0.0;       ///< forecast of the return over the window
  double sigma2_sum = 0.0;  ///< sum_j Psi_j sigma2_hat_{n+j}
  int window = 0;           ///< number of intraday steps
};

/// Multi-day aggregation. day_counts holds the number of intraday returns of each future day.
AggregateForecast aggregate_horizon(const std::vector<ForecastSet>& sets, const Eigen::VectorXd& psi,
                                    std::span<const int> day_counts, int h_days);

}  // namespace sfg
