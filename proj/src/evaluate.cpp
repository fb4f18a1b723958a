#include "sfiegarch/evaluate.hpp"

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>

#include "sfiegarch/error.hpp"
#include "sfiegarch/innovations.hpp"
#include "sfiegarch/spectral.hpp"

namespace sfg {

double chi2_sf(double x, double df) {
  if (!(x > 0.0)) return 1.0;
  boost::math::chi_squared dist(df);
  return boost::math::cdf(boost::math::complement(dist, x));
}

ErrorMeasures error_measures(const Eigen::VectorXd& actual, const Eigen::VectorXd& predicted) {
  if (actual.size() != predicted.size() || actual.size() < 1)
    throw InvalidArgument("error_measures: lengths must match and be >= 1");
  ErrorMeasures m;
  const Eigen::Index n = actual.size();
  double sum_pe = 0.0;
  int used = 0;
  for (Eigen::Index t = 0; t < n; ++t) {
    const double e = std::abs(actual(t) - predicted(t));
    m.mae += e;
    m.max_ae = std::max(m.max_ae, e);
    if (std::abs(actual(t)) < 1e-12) {
      ++m.mpe_skipped;
    } else {
      sum_pe += e / std::abs(actual(t));
      ++used;
    }
  }
  m.mae /= static_cast<double>(n);
  m.mpe_defined = used > 0;
  m.mpe = used > 0 ? sum_pe / used : std::numeric_limits<double>::quiet_NaN();
  return m;
}

DieboldMariano diebold_mariano(const Eigen::VectorXd& d, int h) {
  const Eigen::Index n = d.size();
  if (n < 10) throw InvalidArgument("diebold_mariano: need at least 10 observations");
  if (h < 1) throw InvalidArgument("diebold_mariano: h must be >= 1");
  DieboldMariano r;
  const double mean = d.mean();
  const Eigen::VectorXd c = d.array() - mean;
  double lrv = c.squaredNorm() / n;
  for (int k = 1; k < h && k < n; ++k) {
    const double w = 1.0 - static_cast<double>(k) / h;
    lrv += 2.0 * w * c.head(n - k).dot(c.tail(n - k)) / n;
  }
  if (!(lrv > 1e-300)) {
    if (std::abs(mean) < 1e-300) {
      r.degenerate = true;
      r.stat = 0.0;
      r.pvalue = 1.0;
    } else {
      r.stat = mean > 0 ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
      r.pvalue = 0.0;
    }
    return r;
  }
  r.stat = mean / std::sqrt(lrv / n);
  r.pvalue = std::erfc(std::abs(r.stat) / std::sqrt(2.0));
  return r;
}

double predictive_loglik(const Eigen::VectorXd& y, const Eigen::VectorXd& mu, const Eigen::VectorXd& sigma2,
                         const InnovationDist& dist) {
  if (y.size() != mu.size() || y.size() != sigma2.size() || y.size() == 0)
    throw InvalidArgument("predictive_loglik: lengths must match");
  double acc = 0.0;
  for (Eigen::Index t = 0; t < y.size(); ++t) {
    if (!(sigma2(t) > 0.0)) throw InvalidArgument("predictive_loglik: nonpositive variance forecast");
    const double sd = std::sqrt(sigma2(t));
    acc += log_density(dist, (y(t) - mu(t)) / sd) - std::log(sd);
  }
  return acc / static_cast<double>(y.size());
}

MincerZarnowitz mincer_zarnowitz(const Eigen::VectorXd& y, const Eigen::VectorXd& yhat, long n_fit, int hac_lags) {
  const Eigen::Index n = y.size();
  if (yhat.size() != n) throw InvalidArgument("mincer_zarnowitz: lengths must match");
  if (hac_lags < 0 || n < hac_lags + 2) throw InvalidArgument("mincer_zarnowitz: series too short for hac_lags");
  if (n_fit < 1) throw InvalidArgument("mincer_zarnowitz: n_fit must be positive");
  Eigen::MatrixXd X(n, 2);
  X.col(0).setOnes();
  X.col(1) = yhat;
  const Eigen::Matrix2d xtx = X.transpose() * X;
  const double scale = xtx.cwiseAbs().maxCoeff();
  if (std::abs(xtx.determinant()) <= 1e-12 * scale * scale)
    throw InvalidArgument("mincer_zarnowitz: collinear predictor");
  const Eigen::Matrix2d xtx_inv = xtx.inverse();
  const Eigen::Vector2d b = xtx_inv * (X.transpose() * y);
  const Eigen::VectorXd u = y - X * b;

  Eigen::Matrix2d S = Eigen::Matrix2d::Zero();
  for (Eigen::Index t = 0; t < n; ++t) S += u(t) * u(t) * X.row(t).transpose() * X.row(t);
  for (int l = 1; l <= hac_lags; ++l) {
    const double w = 1.0 - static_cast<double>(l) / (hac_lags + 1);
    Eigen::Matrix2d G = Eigen::Matrix2d::Zero();
    for (Eigen::Index t = l; t < n; ++t) G += u(t) * u(t - l) * X.row(t).transpose() * X.row(t - l);
    S += w * (G + G.transpose());
  }
  MincerZarnowitz mz;
  mz.gamma0 = b(0);
  mz.gamma1 = b(1);
  mz.lambda_correction = std::sqrt(1.0 + static_cast<double>(n) / static_cast<double>(n_fit));
  const double l2 = mz.lambda_correction * mz.lambda_correction;
  const Eigen::Matrix2d V = l2 * (xtx_inv * S * xtx_inv);
  mz.se0 = std::sqrt(std::max(0.0, V(0, 0)));
  mz.se1 = std::sqrt(std::max(0.0, V(1, 1)));
  const Eigen::Vector2d delta(b(0), b(1) - 1.0);
  if (delta.cwiseAbs().maxCoeff() < 1e-12 * (1.0 + std::abs(b(1)))) {
    mz.wald = 0.0;
    mz.wald_pvalue = 1.0;
    return mz;
  }
  Eigen::LDLT<Eigen::Matrix2d> ldlt(V);
  if (ldlt.info() != Eigen::Success || !(V.determinant() > 0.0)) {
    mz.wald = std::numeric_limits<double>::infinity();
    mz.wald_pvalue = 0.0;
    return mz;
  }
  mz.wald = delta.dot(ldlt.solve(delta));
  mz.wald_pvalue = chi2_sf(mz.wald, 2.0);
  return mz;
}

Eigen::VectorXd sample_acf(const Eigen::VectorXd& x, int max_lag) {
  const Eigen::Index n = x.size();
  const Eigen::VectorXd c = x.array() - x.mean();
  const double c0 = c.squaredNorm();
  Eigen::VectorXd r = Eigen::VectorXd::Zero(max_lag);
  if (!(c0 > 0.0)) return r;
  for (int k = 1; k <= max_lag && k < n; ++k) r(k - 1) = c.head(n - k).dot(c.tail(n - k)) / c0;
  return r;
}

std::vector<PortmanteauRow> portmanteau(const Eigen::VectorXd& x, std::span<const int> lags, int fitted_params) {
  const Eigen::Index n = x.size();
  int maxlag = 0;
  for (int l : lags) {
    if (l < 1) throw InvalidArgument("portmanteau: lags must be positive");
    maxlag = std::max(maxlag, l);
  }
  if (n <= maxlag) throw InvalidArgument("portmanteau: series shorter than the largest lag");
  const Eigen::VectorXd rho = sample_acf(x, maxlag);
  std::vector<PortmanteauRow> out;
  for (int l : lags) {
    PortmanteauRow row;
    row.lag = l;
    row.df = std::max(1, l - fitted_params);
    double bp = 0.0, lb = 0.0;
    for (int k = 1; k <= l; ++k) {
      const double r2 = rho(k - 1) * rho(k - 1);
      bp += r2;
      lb += r2 / static_cast<double>(n - k);
    }
    row.bp = static_cast<double>(n) * bp;
    row.lb = static_cast<double>(n) * (n + 2.0) * lb;
    row.bp_pvalue = chi2_sf(row.bp, row.df);
    row.lb_pvalue = chi2_sf(row.lb, row.df);
    out.push_back(row);
  }
  return out;
}

double kolmogorov_sf(double t) {
  if (t <= 0.0) return 1.0;
  if (t < 0.2) return 1.0;
  double s = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * t * t);
    s += (k % 2 == 1 ? 2.0 : -2.0) * term;
    if (term < 1e-300) break;
  }
  return std::clamp(s, 0.0, 1.0);
}

KsResult ks_uniform(std::vector<double> u) {
  const std::size_t n = u.size();
  if (n == 0) throw InvalidArgument("ks_uniform: empty sample");
  std::sort(u.begin(), u.end());
  double d = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lo = static_cast<double>(i) / n;
    const double hi = static_cast<double>(i + 1) / n;
    d = std::max({d, hi - u[i], u[i] - lo});
  }
  const double sn = std::sqrt(static_cast<double>(n));
  KsResult r;
  r.stat = d;
  r.pvalue = kolmogorov_sf((sn + 0.12 + 0.11 / sn) * d);
  return r;
}

CumulativePeriodogram cumulative_periodogram(const Eigen::VectorXd& x) {
  const Eigen::Index n = x.size();
  if (n < 16) throw InvalidArgument("cumulative_periodogram: need at least 16 observations");
  CumulativePeriodogram res;
  const Eigen::VectorXd c = x.array() - x.mean();
  auto per = periodogram(c);
  const int m = static_cast<int>((n - 1) / 2);
  double total = 0.0;
  for (int j = 1; j <= m; ++j) total += per[j].power;
  if (!(total > 0.0)) {
    res.degenerate = true;
    return res;
  }
  double cum = 0.0, dmax = 0.0;
  for (int j = 1; j <= m; ++j) {
    cum += per[j].power;
    const double line = static_cast<double>(j) / m;
    dmax = std::max(dmax, std::abs(cum / total - line));
  }
  const double q = std::max(1, m - 1);
  res.stat = dmax;
  res.critical = 1.358 / (std::sqrt(q) + 0.12 + 0.11 / std::sqrt(q));
  res.reject = dmax > res.critical;
  return res;
}

DensityTransformResult density_transform_test(const Eigen::VectorXd& x, const Eigen::VectorXd& sigma2,
                                              std::span<const double> nu_grid) {
  if (x.size() != sigma2.size() || x.size() == 0) throw InvalidArgument("density_transform_test: lengths must match");
  DensityTransformResult res;
  if (x.maxCoeff() == x.minCoeff()) {
    res.degenerate = true;
    return res;
  }
  for (double nu : nu_grid) {
    InnovationDist dist = nu == 2.0 ? InnovationDist::gaussian() : InnovationDist::ged(nu);
    std::vector<double> u(x.size());
    for (Eigen::Index t = 0; t < x.size(); ++t) {
      if (!(sigma2(t) > 0.0)) throw InvalidArgument("density_transform_test: nonpositive variance");
      u[t] = cdf(dist, x(t) / std::sqrt(sigma2(t)));
    }
    auto ks = ks_uniform(std::move(u));
    res.rows.push_back({nu, ks.stat, ks.pvalue});
  }
  return res;
}

double RealizedSeries::window(int t, int h) const {
  if (t < 0 || h < 1 || t + h > daily_vol.size()) throw InvalidArgument("realized window out of range");
  return daily_vol.segment(t, h).sum();
}

RealizedSeries realized_volatility(const Eigen::VectorXd& intraday, std::span<const int> day_counts) {
  RealizedSeries rs;
  long total = 0;
  for (int c : day_counts) {
    if (c < 1) throw InvalidArgument("realized_volatility: empty day");
    total += c;
  }
  if (total != intraday.size()) throw InvalidArgument("realized_volatility: day counts do not partition the series");
  const Eigen::Index days = static_cast<Eigen::Index>(day_counts.size());
  rs.daily_returns.resize(days);
  rs.daily_vol.resize(days);
  rs.counts.assign(day_counts.begin(), day_counts.end());
  Eigen::Index pos = 0;
  for (Eigen::Index t = 0; t < days; ++t) {
    const auto seg = intraday.segment(pos, day_counts[t]);
    const double mean = seg.mean();
    rs.daily_returns(t) = seg.sum();
    rs.daily_vol(t) = (seg.array() - mean).square().sum();
    pos += day_counts[t];
  }
  return rs;
}

}  // namespace sfg
