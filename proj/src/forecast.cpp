#include "sfiegarch/forecast.hpp"

#include <cmath>

#include "sfiegarch/acov.hpp"
#include "sfiegarch/coeffs.hpp"
#include "sfiegarch/error.hpp"
#include "sfiegarch/innovations.hpp"

namespace sfg {

FitResult conditioning_history(const SfiegarchSpec& spec, const ArmaSpec& arma, const Eigen::VectorXd& r,
                               double abs_mean_z) {
  FitResult fr;
  fr.spec_hat = spec;
  fr.arma_hat = arma;
  fr.returns = r;
  const double pre = arma.ar.empty() ? 0.0 : r.mean();
  fr.residuals_x = arma_residuals(arma, r, pre);
  auto f = volatility_filter(spec, fr.residuals_x, abs_mean_z);
  if (!f.finite) throw NumericFailure("conditioning_history: filter overflow");
  fr.residuals_z = f.z;
  fr.sigma2_fitted = f.sigma2;
  fr.loglik = f.loglik;
  fr.abs_mean_z = abs_mean_z;
  fr.converged = true;
  return fr;
}

Forecaster::Forecaster(const FitResult& fit, int max_h, const ForecastOptions& opt) {
  if (max_h < 1) throw InvalidArgument("forecast: horizon must be >= 1");
  const auto& spec = fit.spec_hat;
  const auto& z = fit.residuals_z;
  const auto& x = fit.residuals_x;
  const Eigen::Index n = z.size();
  if (n < 1 || x.size() != n) throw InvalidArgument("forecast: fitted residual history missing");
  lam_ = lambda_coefficients(spec, static_cast<int>(n + max_h));
  psi_ = arma_psi_weights(fit.arma_hat, static_cast<int>(n + max_h));

  Eigen::VectorXd g(n);
  for (Eigen::Index t = 0; t < n; ++t) g(t) = news_impact(z(t), spec.theta, spec.gamma, fit.abs_mean_z);

  // sample moments for the sigma_g^2 and E(l) estimators
  const double mabs = z.cwiseAbs().mean();
  const double mcross = (z.array() * z.array().abs()).mean();
  const double th = spec.theta, ga = spec.gamma;
  const double sg2 = th * th + ga * ga - ga * ga * mabs * mabs + 2.0 * th * ga * mcross;
  Eigen::VectorXd gc(n);
  for (Eigen::Index t = 0; t < n; ++t) gc(t) = th * z(t) + ga * (std::abs(z(t)) - mabs);

  auto e_of = [&](int l) {
    if (opt.mode == ExpectationMode::analytic) return g_mgf(spec.innovation, lam_(l), th, ga);
    return (lam_(l) * gc.array()).exp().mean();
  };

  std::optional<SecondOrder> so;
  double log_total2 = 0.0, esig4 = 0.0, z4 = 0.0;
  if (opt.with_mse) {
    so.emplace(spec);
    log_total2 = log_mgf_product(*so, 2.0);
    esig4 = std::exp(2.0 * spec.omega + log_total2);
    z4 = so->moments().z4;
  }

  sets_.resize(max_h);
  std::vector<double> etab;
  double log_e = 0.0, sum_l2 = 0.0;
  double head_m2 = 0.0, head_m1sq = 0.0, head_log2 = 0.0;
  for (int h = 1; h <= max_h; ++h) {
    ForecastSet& fs = sets_[h - 1];
    fs.horizon = h;
    if (h >= 2) {
      const int l = h - 2;
      const double e = e_of(l);
      if (!(e > 0.0) || !std::isfinite(e)) throw NumericFailure("forecast: divergent E(l) product");
      etab.push_back(e);
      log_e += std::log(e);
      sum_l2 += lam_(l) * lam_(l);
      if (opt.with_mse) {
        const double m2 = g_mgf(spec.innovation, 2.0 * lam_(l), th, ga);
        const double m1 = g_mgf(spec.innovation, lam_(l), th, ga);
        head_log2 += std::log(m2);
        head_m2 = head_log2;
        head_m1sq += 2.0 * std::log(m1);
      }
    }
    double acc = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) acc += lam_(k + h - 1) * g(n - 1 - k);
    fs.ln_sigma2_hat = spec.omega + acc;
    fs.sigma2_check = std::exp(fs.ln_sigma2_hat);
    fs.e_table = etab;
    fs.sigma2_hat = fs.sigma2_check * std::exp(log_e);
    fs.sigma_g_sq_hat = sg2;
    fs.sigma2_tilde = fs.sigma2_check * (1.0 + 0.5 * sg2 * sum_l2);
    fs.mse_ln = sg2 * sum_l2;
    if (h == 1) {
      fs.sigma2_hat = fs.sigma2_tilde = fs.sigma2_check;
      fs.mse_ln = 0.0;
    }
    if (opt.with_mse) {
      const double tail = std::exp(log_total2 - head_log2);
      const double head = h == 1 ? 0.0 : std::exp(head_m2) - std::exp(head_m1sq);
      fs.mse_sigma2 = std::exp(2.0 * spec.omega) * head * tail;
      fs.mse_x2 = esig4 * (z4 - 1.0) + fs.mse_sigma2;
    }
  }

  // mean forecasts
  const auto& arma = fit.arma_hat;
  const auto& r = fit.returns;
  const double mu = arma.mu;
  std::vector<double> rhat(max_h);
  auto r_at = [&](Eigen::Index t) -> double {  // t relative to 0-based sample, t >= n are forecasts
    if (t >= n) return rhat[t - n];
    if (t < 0) return arma.ar.empty() ? mu : r.mean();
    return r(t);
  };
  for (int h = 1; h <= max_h; ++h) {
    const Eigen::Index t = n - 1 + h;
    double v = mu;
    for (auto& [k, phi] : arma.ar) v += phi * (r_at(t - k) - mu);
    for (auto& [j, c] : arma.ma)
      if (t - j < n && t - j >= 0) v += c * x(t - j);
    rhat[h - 1] = v;
    sets_[h - 1].r_hat = v;
  }
  for (int h = 1; h <= max_h; ++h) {
    double var = 0.0;
    for (int k = 0; k < h; ++k) var += psi_(k) * psi_(k) * sets_[h - k - 1].sigma2_hat;
    double lin = 0.0;
    for (Eigen::Index j = h; j < h + n; ++j) lin += psi_(j) * x(n - 1 + h - j);
    sets_[h - 1].r2_hat = mu * mu + var + lin * lin + 2.0 * mu * lin;
  }
}

const ForecastSet& Forecaster::at(int h) const {
  if (h < 1 || h > static_cast<int>(sets_.size())) throw InvalidArgument("forecast: horizon out of range");
  return sets_[h - 1];
}

std::vector<ForecastSet> forecast(const FitResult& fit, int max_h, const ForecastOptions& opt) {
  return Forecaster(fit, max_h, opt).sets();
}

double forecast_ln_sigma2(const FitResult& fit, int h) {
  ForecastOptions o;
  o.with_mse = false;
  return Forecaster(fit, h, o).at(h).ln_sigma2_hat;
}

ForecastSet forecast_sigma2(const FitResult& fit, int h, const ForecastOptions& opt) {
  return Forecaster(fit, h, opt).at(h);
}

double forecast_r(const FitResult& fit, int h) {
  ForecastOptions o;
  o.with_mse = false;
  return Forecaster(fit, h, o).at(h).r_hat;
}

double forecast_r2(const FitResult& fit, int h) {
  ForecastOptions o;
  o.with_mse = false;
  return Forecaster(fit, h, o).at(h).r2_hat;
}

AggregateForecast aggregate_horizon(const std::vector<ForecastSet>& sets, const Eigen::VectorXd& psi,
                                    std::span<const int> day_counts, int h_days) {
  if (h_days < 1 || static_cast<std::size_t>(h_days) > day_counts.size())
    throw InvalidArgument("aggregate_horizon: day window outside the supplied day counts");
  int L = 0;
  for (int j = 0; j < h_days; ++j) {
    if (day_counts[j] < 1) throw InvalidArgument("aggregate_horizon: empty day in window");
    L += day_counts[j];
  }
  if (static_cast<int>(sets.size()) < L || psi.size() < L)
    throw InvalidArgument("aggregate_horizon: not enough step forecasts for the window");
  AggregateForecast a;
  a.window = L;
  for (int j = 1; j <= L; ++j) {
    a.r_sum += sets[j - 1].r_hat;
    const double c = psi.head(L - j + 1).sum();
    a.sigma2_sum += c * c * sets[j - 1].sigma2_hat;
  }
  return a;
}

}  // namespace sfg
