#include "sfiegarch/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sfiegarch/coeffs.hpp"
#include "sfiegarch/error.hpp"
#include "sfiegarch/innovations.hpp"

namespace sfg {

namespace {

const double kLog2Pi = std::log(2.0 * 3.14159265358979323846);

double normal_two_sided(double zstat) { return std::erfc(std::abs(zstat) / std::sqrt(2.0)); }

Eigen::MatrixXd pseudo_inverse(const Eigen::MatrixXd& a, bool* singular) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (a + a.transpose()));
  const Eigen::VectorXd ev = es.eigenvalues();
  const double cut = 1e-10 * ev.cwiseAbs().maxCoeff();
  Eigen::VectorXd inv(ev.size());
  *singular = false;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (std::abs(ev(i)) <= cut) {
      inv(i) = 0.0;
      *singular = true;
    } else {
      inv(i) = 1.0 / ev(i);
    }
  }
  return es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().transpose();
}

}  // namespace

VolatilityFilter volatility_filter(const SfiegarchSpec& spec, const Eigen::VectorXd& x, double abs_mean_z) {
  const Eigen::Index n = x.size();
  VolatilityFilter out;
  out.ln_sigma2.resize(n);
  out.sigma2.resize(n);
  out.z.resize(n);
  out.g.resize(n);
  out.contributions.resize(n);
  const int s = std::max(spec.s, 1);
  const Eigen::VectorXd pi = spec.d == 0.0 ? Eigen::VectorXd::Ones(1) : seasonal_pi(spec.d, 1, static_cast<int>(n / s + 1));
  const int p = spec.p(), q = spec.q();
  Eigen::VectorXd W = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd Y = Eigen::VectorXd::Zero(n);
  double ll = 0.0;
  for (Eigen::Index t = 0; t < n; ++t) {
    double w = 0.0;
    for (Eigen::Index j = 0; j < pi.size(); ++j) {
      const Eigen::Index src = t - 1 - j * s;
      if (src < 0) break;
      w += pi(j) * out.g(src);
    }
    W(t) = w;
    double y = w;
    for (int i = 1; i <= p; ++i)
      if (t - i >= 0) y -= spec.alpha[i - 1] * W(t - i);
    for (int j = 1; j <= q; ++j)
      if (t - j >= 0) y += spec.beta[j - 1] * Y(t - j);
    Y(t) = y;
    const double ls = spec.omega + y;
    if (!std::isfinite(ls) || std::abs(ls) > 700.0) {
      out.finite = false;
      out.loglik = -std::numeric_limits<double>::infinity();
      return out;
    }
    const double s2 = std::exp(ls);
    const double z = x(t) / std::sqrt(s2);
    out.ln_sigma2(t) = ls;
    out.sigma2(t) = s2;
    out.z(t) = z;
    out.g(t) = news_impact(z, spec.theta, spec.gamma, abs_mean_z);
    const double c = -0.5 * kLog2Pi - 0.5 * (ls + z * z);
    out.contributions(t) = c;
    ll += c;
  }
  out.loglik = ll;
  out.finite = std::isfinite(ll);
  return out;
}

double quasi_loglik(const SfiegarchSpec& spec, const Eigen::VectorXd& x, double abs_mean_z) {
  return volatility_filter(spec, x, abs_mean_z).loglik;
}

InfoCriteria info_criteria(double loglik, int k, long n) {
  InfoCriteria ic;
  ic.aic = -2.0 * loglik + 2.0 * k;
  ic.bic = -2.0 * loglik + k * std::log(static_cast<double>(n));
  ic.hqc = -2.0 * loglik + 2.0 * k * std::log(std::log(static_cast<double>(n)));
  return ic;
}

RobustCovariance robust_covariance(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& contributions,
                                   const Eigen::VectorXd& params) {
  RobustCovariance rc;
  Eigen::MatrixXd scores = numeric_jacobian(contributions, params, 1e-5);
  rc.opg = scores.transpose() * scores;
  Objective total = [&](const Eigen::VectorXd& v) { return contributions(v).sum(); };
  rc.hessian = numeric_hessian(total, params, 1e-4);
  Eigen::MatrixXd hinv = pseudo_inverse(rc.hessian, &rc.singular);
  rc.cov = hinv * rc.opg * hinv;
  rc.cov = 0.5 * (rc.cov + rc.cov.transpose());
  return rc;
}

Eigen::VectorXd arma_residuals(const ArmaSpec& arma, const Eigen::VectorXd& r, double presample_r) {
  const Eigen::Index n = r.size();
  Eigen::VectorXd x(n);
  for (Eigen::Index t = 0; t < n; ++t) {
    double v = r(t) - arma.mu;
    for (auto& [k, phi] : arma.ar) v -= phi * ((t - k >= 0 ? r(t - k) : presample_r) - arma.mu);
    for (auto& [j, c] : arma.ma)
      if (t - j >= 0) v -= c * x(t - j);
    x(t) = v;
  }
  return x;
}

namespace {

struct ArmaLayout {
  bool mean = true;
  std::vector<int> ar, ma;
  int size() const { return (mean ? 1 : 0) + static_cast<int>(ar.size() + ma.size()); }
  std::vector<std::string> names() const {
    std::vector<std::string> v;
    if (mean) v.push_back("mu");
    for (int k : ar) v.push_back("ar" + std::to_string(k));
    for (int j : ma) v.push_back("ma" + std::to_string(j));
    return v;
  }
  ArmaSpec unpack(const Eigen::VectorXd& e) const {
    ArmaSpec a;
    int i = 0;
    if (mean) a.mu = e(i++);
    for (int k : ar) a.ar[k] = e(i++);
    for (int j : ma) a.ma[j] = e(i++);
    return a;
  }
};

}  // namespace

ArmaFit fit_arma(const Eigen::VectorXd& r, const ArmaLagSets& lags, const ArmaFitOptions& opt) {
  const Eigen::Index n = r.size();
  ArmaLayout lay{lags.include_mean, lags.ar, lags.ma};
  for (int k : lay.ar)
    if (k < 1) throw InvalidArgument("fit_arma: AR lags must be positive");
  for (int k : lay.ma)
    if (k < 1) throw InvalidArgument("fit_arma: MA lags must be positive");
  const int maxlag = std::max(lay.ar.empty() ? 0 : *std::max_element(lay.ar.begin(), lay.ar.end()),
                              lay.ma.empty() ? 0 : *std::max_element(lay.ma.begin(), lay.ma.end()));
  if (n < maxlag + 10) throw InvalidArgument("fit_arma: series too short for the requested lags");
  const double rbar = r.mean();
  std::vector<std::string> removed;

  for (;;) {
    ArmaFit fit;
    const int k = lay.size();
    Eigen::VectorXd est(k);
    if (k > 0) {
      Eigen::VectorXd start = Eigen::VectorXd::Zero(k);
      if (lay.mean) start(0) = rbar;
      Objective sse = [&](const Eigen::VectorXd& e) {
        Eigen::VectorXd x = arma_residuals(lay.unpack(e), r, rbar);
        return x.squaredNorm() / static_cast<double>(n);
      };
      OptimOptions o;
      o.max_iter = opt.max_iter;
      o.tol = 1e-12;
      o.initial_step = 0.05;
      auto nm = nelder_mead(sse, start, o);
      auto bf = bfgs(sse, nm.x, o);
      est = bf.value <= nm.value ? bf.x : nm.x;
    }
    fit.arma = lay.unpack(est);
    fit.residuals = arma_residuals(fit.arma, r, rbar);
    fit.sigma2 = fit.residuals.squaredNorm() / static_cast<double>(n);
    fit.names = lay.names();
    fit.estimates = est;
    fit.removed = removed;
    if (k > 0) {
      const double s2 = fit.sigma2;
      auto contrib = [&](const Eigen::VectorXd& e) -> Eigen::VectorXd {
        Eigen::VectorXd x = arma_residuals(lay.unpack(e), r, rbar);
        return (-0.5 * kLog2Pi - 0.5 * std::log(s2) - 0.5 * x.array().square() / s2).matrix();
      };
      auto rc = robust_covariance(contrib, est);
      fit.se = rc.cov.diagonal().cwiseMax(0.0).cwiseSqrt();
      fit.pvalues.resize(k);
      for (int i = 0; i < k; ++i)
        fit.pvalues(i) = fit.se(i) > 0 ? normal_two_sided(est(i) / fit.se(i)) : 0.0;
    }
    if (opt.eliminate && k > 0) {
      Eigen::Index worst = 0;
      const double pmax = fit.pvalues.maxCoeff(&worst);
      if (pmax >= opt.level) {
        removed.push_back(fit.names[worst]);
        int i = static_cast<int>(worst);
        if (lay.mean) {
          if (i == 0) {
            lay.mean = false;
            continue;
          }
          --i;
        }
        if (i < static_cast<int>(lay.ar.size())) {
          lay.ar.erase(lay.ar.begin() + i);
        } else {
          lay.ma.erase(lay.ma.begin() + (i - static_cast<int>(lay.ar.size())));
        }
        continue;
      }
    }
    if (!fit.arma.ar.empty()) {
      const double mod = min_root_modulus(fit.arma.ar_poly());
      if (!(mod > 1.0 + kRootTol))
        throw NumericFailure("fit_arma: nonstationary AR estimate, smallest root modulus " + std::to_string(mod));
    }
    return fit;
  }
}

std::vector<std::string> volatility_param_names(const VolatilityConfig& cfg) {
  std::vector<std::string> v;
  if (cfg.estimate_d) v.push_back("d");
  v.push_back("theta");
  v.push_back("gamma");
  v.push_back("omega");
  for (int i = 1; i <= cfg.p; ++i) v.push_back("alpha" + std::to_string(i));
  for (int j = 1; j <= cfg.q; ++j) v.push_back("beta" + std::to_string(j));
  return v;
}

Eigen::VectorXd pack_volatility(const SfiegarchSpec& spec, const VolatilityConfig& cfg) {
  const int k = (cfg.estimate_d ? 1 : 0) + 3 + cfg.p + cfg.q;
  Eigen::VectorXd v(k);
  int i = 0;
  if (cfg.estimate_d) v(i++) = spec.d;
  v(i++) = spec.theta;
  v(i++) = spec.gamma;
  v(i++) = spec.omega;
  for (int j = 0; j < cfg.p; ++j) v(i++) = j < spec.p() ? spec.alpha[j] : 0.0;
  for (int j = 0; j < cfg.q; ++j) v(i++) = j < spec.q() ? spec.beta[j] : 0.0;
  return v;
}

SfiegarchSpec unpack_volatility(const Eigen::VectorXd& v, const VolatilityConfig& cfg) {
  SfiegarchSpec s;
  int i = 0;
  s.d = cfg.estimate_d ? v(i++) : cfg.fixed_d;
  s.theta = v(i++);
  s.gamma = v(i++);
  s.omega = v(i++);
  s.alpha.resize(cfg.p);
  s.beta.resize(cfg.q);
  for (int j = 0; j < cfg.p; ++j) s.alpha[j] = v(i++);
  for (int j = 0; j < cfg.q; ++j) s.beta[j] = v(i++);
  s.s = cfg.s;
  s.innovation = cfg.innovation;
  return s;
}

Eigen::VectorXd to_unconstrained(const Eigen::VectorXd& v, const VolatilityConfig& cfg) {
  Eigen::VectorXd u = v;
  if (cfg.estimate_d) {
    const double y = (v(0) + 1.0) / 1.5;
    if (!(y > 0.0 && y < 1.0)) throw InvalidArgument("d outside (-1, 0.5)");
    u(0) = std::log(y / (1.0 - y));
  }
  return u;
}

Eigen::VectorXd from_unconstrained(const Eigen::VectorXd& u, const VolatilityConfig& cfg) {
  Eigen::VectorXd v = u;
  if (cfg.estimate_d) v(0) = -1.0 + 1.5 / (1.0 + std::exp(-u(0)));
  return v;
}

FitResult fit_sfiegarch(const Eigen::VectorXd& x, const VolatilityConfig& cfg) {
  if (cfg.s < 1 || cfg.p < 0 || cfg.q < 0) throw InvalidArgument("fit_sfiegarch: need s >= 1, p, q >= 0");
  const Eigen::Index n = x.size();
  if (n < 50) throw InvalidArgument("fit_sfiegarch: series too short");
  if (!x.allFinite()) throw InvalidArgument("fit_sfiegarch: non-finite residuals");
  const double ms = x.squaredNorm() / static_cast<double>(n);
  if (!(ms > 0.0)) throw InvalidArgument("fit_sfiegarch: residuals are identically zero");

  SfiegarchSpec start;
  if (cfg.start) {
    start = *cfg.start;
    start.s = cfg.s;
  } else {
    start.d = cfg.estimate_d ? 0.2 : cfg.fixed_d;
    start.theta = -0.05;
    start.gamma = 0.2;
    start.omega = std::log(ms);
    start.alpha.assign(cfg.p, 0.0);
    start.beta.assign(cfg.q, 0.0);
    start.s = cfg.s;
  }
  const Eigen::VectorXd v0 = pack_volatility(start, cfg);

  auto penalty = [&](const SfiegarchSpec& s) {
    if (s.q() == 0) return 0.0;
    const double mod = min_root_modulus(s.beta_poly());
    const double breach = std::max(0.0, 1.0 + 1e-6 - mod);
    return 1e4 * breach * breach;
  };
  Objective obj = [&](const Eigen::VectorXd& u) {
    SfiegarchSpec s = unpack_volatility(from_unconstrained(u, cfg), cfg);
    const double pen = penalty(s);
    if (pen > 0.0) return 1e10 * (1.0 + pen);
    const double ll = quasi_loglik(s, x, cfg.abs_mean_z);
    if (!std::isfinite(ll)) return std::numeric_limits<double>::infinity();
    return -ll / static_cast<double>(n);
  };

  OptimOptions o;
  o.max_iter = cfg.max_iter;
  o.tol = cfg.tol;
  o.initial_step = 0.1;
  const Eigen::VectorXd u0 = to_unconstrained(v0, cfg);
  auto nm = nelder_mead(obj, u0, o);
  auto bf = bfgs(obj, nm.x, o);
  const bool use_bfgs = bf.value <= nm.value;
  const Eigen::VectorXd uhat = use_bfgs ? bf.x : nm.x;

  FitResult fr;
  fr.names = volatility_param_names(cfg);
  fr.estimates = from_unconstrained(uhat, cfg);
  fr.spec_hat = unpack_volatility(fr.estimates, cfg);
  fr.iterations = nm.iterations + bf.iterations;
  fr.converged = (nm.converged || bf.converged) && std::isfinite(use_bfgs ? bf.value : nm.value);
  fr.abs_mean_z = cfg.abs_mean_z;

  auto filt = volatility_filter(fr.spec_hat, x, cfg.abs_mean_z);
  if (!filt.finite) throw NumericFailure("fit_sfiegarch: log-likelihood not finite at the optimum");
  fr.loglik = filt.loglik;
  fr.residuals_x = x;
  fr.residuals_z = filt.z;
  fr.sigma2_fitted = filt.sigma2;
  fr.returns = x;

  auto contrib = [&](const Eigen::VectorXd& v) -> Eigen::VectorXd {
    auto f = volatility_filter(unpack_volatility(v, cfg), x, cfg.abs_mean_z);
    if (!f.finite) return Eigen::VectorXd::Constant(n, std::numeric_limits<double>::quiet_NaN());
    return f.contributions;
  };
  auto rc = robust_covariance(contrib, fr.estimates);
  fr.cov_robust = rc.cov;
  fr.hessian_singular = rc.singular;
  fr.se = rc.cov.diagonal().cwiseMax(0.0).cwiseSqrt();
  fr.k = static_cast<int>(fr.estimates.size());
  auto ic = info_criteria(fr.loglik, fr.k, static_cast<long>(n));
  fr.aic = ic.aic;
  fr.bic = ic.bic;
  fr.hqc = ic.hqc;
  return fr;
}

FitResult fit_two_step(const Eigen::VectorXd& r, const ArmaLagSets& lags, const VolatilityConfig& cfg,
                       const ArmaFitOptions& arma_opt) {
  ArmaFit af = fit_arma(r, lags, arma_opt);
  FitResult fr = fit_sfiegarch(af.residuals, cfg);
  fr.arma_hat = af.arma;
  fr.returns = r;
  fr.k += af.n_params();
  auto ic = info_criteria(fr.loglik, fr.k, static_cast<long>(r.size()));
  fr.aic = ic.aic;
  fr.bic = ic.bic;
  fr.hqc = ic.hqc;
  fr.arma_fit = std::move(af);
  return fr;
}

}  // namespace sfg
