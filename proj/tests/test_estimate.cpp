#include "doctest.h"

#include <cmath>
#include <random>

#include "sfiegarch/coeffs.hpp"
#include "sfiegarch/error.hpp"
#include "sfiegarch/estimate.hpp"
#include "sfiegarch/evaluate.hpp"
#include "sfiegarch/innovations.hpp"
#include "sfiegarch/simulate.hpp"

using namespace sfg;

namespace {

SfiegarchSpec truth(double d = 0.35, int s = 6) {
  SfiegarchSpec x;
  x.omega = 0.5;
  x.theta = -0.15;
  x.gamma = 0.25;
  x.d = d;
  x.s = s;
  return x;
}

Eigen::VectorXd normals(int n, std::uint64_t seed) { return sample(InnovationDist::gaussian(), n, seed); }

bool psd(const Eigen::MatrixXd& m) {
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-8 * std::max(1.0, m.cwiseAbs().maxCoeff())) return false;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  return es.eigenvalues().minCoeff() >= -1e-8 * std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
}

}  // namespace

TEST_CASE("constant variance likelihood") {
  auto s = truth(0.0, 1);
  s.theta = 0.0;
  s.gamma = 0.0;
  s.omega = 0.7;
  Eigen::VectorXd x = normals(300, 4);
  const double ref = -150.0 * std::log(2 * M_PI) - 0.5 * (300 * 0.7 + x.squaredNorm() * std::exp(-0.7));
  CHECK(quasi_loglik(s, x, std::sqrt(2 / M_PI)) == doctest::Approx(ref).epsilon(1e-13));
}

TEST_CASE("filter equals the truncated lambda sum") {
  auto s = truth(0.3, 3);
  s.alpha = {0.2};
  s.beta = {0.5};
  Eigen::VectorXd x = normals(400, 5);
  const double m = std::sqrt(2 / M_PI);
  auto f = volatility_filter(s, x, m);
  auto lam = lambda_coefficients(s, 400);
  for (int t : {0, 1, 7, 150, 399}) {
    double v = s.omega;
    for (int k = 0; k < t; ++k) v += lam(k) * f.g(t - 1 - k);
    CHECK(f.ln_sigma2(t) == doctest::Approx(v).epsilon(1e-12));
    CHECK(f.z(t) == doctest::Approx(x(t) / std::sqrt(f.sigma2(t))).epsilon(1e-14));
    CHECK(f.g(t) == doctest::Approx(news_impact(f.z(t), s.theta, s.gamma, m)).epsilon(1e-14));
  }
  CHECK(f.contributions.sum() == doctest::Approx(f.loglik).epsilon(1e-13));
}

TEST_CASE("overflow is a rejected point") {
  auto s = truth();
  s.omega = 800.0;
  Eigen::VectorXd x = normals(100, 1);
  double ll = 0.0;
  CHECK_NOTHROW(ll = quasi_loglik(s, x, std::sqrt(2 / M_PI)));
  CHECK(std::isinf(ll));
  CHECK(ll < 0);
}

TEST_CASE("true parameters beat perturbed ones on average") {
  auto s = truth(0.3, 2);
  double diff = 0.0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto p = simulate_sfiegarch(s, 1500, SimOptions{-1, 3000, seed, false});
    auto q = s;
    q.d = 0.05;
    q.theta = 0.1;
    diff += quasi_loglik(s, p.x, std::sqrt(2 / M_PI)) - quasi_loglik(q, p.x, std::sqrt(2 / M_PI));
  }
  CHECK(diff > 0.0);
}

TEST_CASE("concatenation is additive up to edge effects") {
  auto s = truth(0.0, 1);
  s.beta = {0.5};
  auto p = simulate_sfiegarch(s, 2000, SimOptions{-1, 500, 8, false});
  Eigen::VectorXd xx(4000);
  xx << p.x, p.x;
  const double m = std::sqrt(2 / M_PI);
  const double one = quasi_loglik(s, p.x, m);
  CHECK(std::abs(quasi_loglik(s, xx, m) - 2 * one) < 1e-2 * std::abs(one));
}

TEST_CASE("information criteria") {
  auto z = info_criteria(0.0, 0, 10);
  CHECK(z.aic == 0.0);
  CHECK(z.bic == 0.0);
  CHECK(z.hqc == 0.0);
  auto a = info_criteria(-100.0, 3, 500), b = info_criteria(-100.0, 4, 500);
  CHECK(b.aic > a.aic);
  CHECK(b.bic > a.bic);
  CHECK(b.hqc > a.hqc);
  auto t = info_criteria(-3053.9066, 16, 4232);
  CHECK(t.aic == doctest::Approx(6139.8132).epsilon(1e-9));
  CHECK(std::abs(t.aic - 6139.8131) < 0.01);
  CHECK(t.bic == doctest::Approx(6107.8132 + 16 * std::log(4232.0)));
  CHECK(t.hqc == doctest::Approx(6107.8132 + 32 * std::log(std::log(4232.0))));
}

TEST_CASE("robust covariance on a quadratic") {
  // contributions c_i = -0.5 (x - a_i)' A_i (x - a_i), total Hessian -sum A_i
  std::mt19937_64 rng(3);
  std::normal_distribution<double> nd;
  const int n = 40, k = 3;
  std::vector<Eigen::MatrixXd> A;
  std::vector<Eigen::VectorXd> a;
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(k, k);
  for (int i = 0; i < n; ++i) {
    Eigen::MatrixXd L(k, k);
    for (int r = 0; r < k; ++r)
      for (int c = 0; c < k; ++c) L(r, c) = nd(rng);
    A.push_back(L * L.transpose() + Eigen::MatrixXd::Identity(k, k));
    Eigen::VectorXd v(k);
    for (int r = 0; r < k; ++r) v(r) = nd(rng);
    a.push_back(v);
    H -= A.back();
  }
  auto contrib = [&](const Eigen::VectorXd& x) {
    Eigen::VectorXd c(n);
    for (int i = 0; i < n; ++i) c(i) = -0.5 * (x - a[i]).dot(A[i] * (x - a[i]));
    return c;
  };
  Eigen::VectorXd x0 = Eigen::VectorXd::Constant(k, 0.3);
  auto rc = robust_covariance(contrib, x0);
  CHECK((rc.hessian - H).norm() <= 1e-4 * H.norm());
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(k, k);
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd gi = -A[i] * (x0 - a[i]);
    B += gi * gi.transpose();
  }
  CHECK((rc.opg - B).norm() <= 1e-6 * B.norm());
  CHECK(psd(rc.cov));
  CHECK_FALSE(rc.singular);

  // flat direction forces the pseudo-inverse
  auto flat = [&](const Eigen::VectorXd& x) {
    Eigen::VectorXd c(n);
    for (int i = 0; i < n; ++i) c(i) = -0.5 * std::pow(x(0) - a[i](0), 2);
    return c;
  };
  auto fl = robust_covariance(flat, x0);
  CHECK(fl.singular);
  CHECK(fl.cov.allFinite());
}

TEST_CASE("information equality under correct specification") {
  // Gaussian mean and log-variance, scores match the information matrix
  Eigen::VectorXd y = normals(20000, 12).array() * 1.5 + 0.4;
  auto contrib = [&](const Eigen::VectorXd& p) {
    Eigen::VectorXd c(y.size());
    const double v = std::exp(p(1));
    for (Eigen::Index i = 0; i < y.size(); ++i)
      c(i) = -0.5 * (std::log(2 * M_PI) + p(1) + std::pow(y(i) - p(0), 2) / v);
    return c;
  };
  Eigen::VectorXd mle(2);
  mle << y.mean(), std::log((y.array() - y.mean()).square().mean());
  auto rc = robust_covariance(contrib, mle);
  Eigen::MatrixXd naive = (-rc.hessian).inverse();
  CHECK(rc.cov(0, 0) == doctest::Approx(naive(0, 0)).epsilon(0.05));
  CHECK(rc.cov(1, 1) == doctest::Approx(naive(1, 1)).epsilon(0.05));
}

TEST_CASE("numeric gradient is stable under step halving") {
  auto s = truth(0.3, 2);
  auto path = simulate_sfiegarch(s, 800, SimOptions{-1, 2000, 21, false});
  VolatilityConfig cfg;
  cfg.s = 2;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-0.05, 0.05);
  for (int i = 0; i < 5; ++i) {
    Eigen::VectorXd v = pack_volatility(s, cfg);
    for (Eigen::Index j = 0; j < v.size(); ++j) v(j) += u(rng);
    Objective f = [&](const Eigen::VectorXd& w) {
      return -quasi_loglik(unpack_volatility(w, cfg), path.x, cfg.abs_mean_z);
    };
    Eigen::VectorXd g1 = numeric_gradient(f, v, 1e-5), g2 = numeric_gradient(f, v, 5e-6);
    for (Eigen::Index j = 0; j < v.size(); ++j) CHECK(std::abs(g1(j) - g2(j)) <= 1e-4 * std::max(1.0, std::abs(g1(j))));
  }
}

TEST_CASE("parameter transform round trip") {
  VolatilityConfig cfg;
  cfg.s = 6;
  cfg.p = 1;
  cfg.q = 2;
  auto s = truth();
  s.alpha = {0.2};
  s.beta = {0.3, -0.1};
  auto names = volatility_param_names(cfg);
  REQUIRE(names.size() == 7);
  CHECK(names[0] == "d");
  CHECK(names[3] == "omega");
  Eigen::VectorXd v = pack_volatility(s, cfg);
  Eigen::VectorXd back = from_unconstrained(to_unconstrained(v, cfg), cfg);
  auto s2 = unpack_volatility(back, cfg);
  auto path = simulate_sfiegarch(s, 500, SimOptions{-1, 1000, 2, false});
  const double m = cfg.abs_mean_z;
  CHECK(std::abs(quasi_loglik(s, path.x, m) - quasi_loglik(s2, path.x, m)) < 1e-9);
  Eigen::VectorXd bad = v;
  bad(0) = 0.7;
  CHECK_THROWS_AS(to_unconstrained(bad, cfg), InvalidArgument);
}

TEST_CASE("ARMA fits") {
  Eigen::VectorXd wn = normals(3000, 31);
  ArmaLagSets lags{{7}, {13}, true};
  ArmaFitOptions keep;
  keep.eliminate = false;
  auto f = fit_arma(wn, lags, keep);
  REQUIRE(f.names.size() == 3);
  for (int i = 1; i < 3; ++i) CHECK(std::abs(f.estimates(i)) < 2 * f.se(i));

  Eigen::VectorXd e = normals(5001, 32);
  Eigen::VectorXd r(5000);
  for (int t = 0; t < 5000; ++t) r(t) = e(t + 1) + 0.3 * e(t);
  auto m = fit_arma(r, ArmaLagSets{{}, {1}, false}, keep);
  CHECK(std::abs(m.estimates(0) - 0.3) < 2 * m.se(0));
  CHECK(m.arma.ma.at(1) == doctest::Approx(m.estimates(0)));
  for (int i = 0; i < m.pvalues.size(); ++i) CHECK((m.pvalues(i) >= 0.0 && m.pvalues(i) <= 1.0));

  // elimination drops the spurious lags, including the mean
  auto el = fit_arma(wn, ArmaLagSets{{3, 7}, {13}, true});
  CHECK(el.removed.size() >= 2);

  Eigen::VectorXd ex(400);
  ex(0) = 1.0;
  for (int t = 1; t < 400; ++t) ex(t) = 1.02 * ex(t - 1) + wn(t);
  CHECK_THROWS_AS(fit_arma(ex, ArmaLagSets{{1}, {}, false}, keep), NumericFailure);
}

TEST_CASE("residual whiteness after ARMA fits") {
  int ok = 0;
  const int lag[] = {20};
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Eigen::VectorXd e = normals(2001, 500 + seed);
    Eigen::VectorXd r(2000);
    r(0) = e(1);
    for (int t = 1; t < 2000; ++t) r(t) = 0.1 + 0.4 * (r(t - 1) - 0.1) + e(t + 1);
    auto f = fit_arma(r, ArmaLagSets{{1}, {}, true}, ArmaFitOptions{false});
    auto rows = portmanteau(f.residuals, lag, 1);
    if (rows[0].lb_pvalue > 0.05) ++ok;
  }
  CHECK(ok >= 18);
}

TEST_CASE("EGARCH special case recovery") {
  SfiegarchSpec s;
  s.omega = 0.2;
  s.theta = -0.1;
  s.gamma = 0.2;
  s.d = 0.0;
  s.s = 1;
  s.beta = {0.9};
  auto p = simulate_sfiegarch(s, 4000, SimOptions{-1, 500, 77, false});
  VolatilityConfig cfg;
  cfg.s = 1;
  cfg.q = 1;
  cfg.estimate_d = false;
  auto fit = fit_sfiegarch(p.x, cfg);
  CHECK(fit.converged);
  CHECK(fit.spec_hat.d == 0.0);
  CHECK(std::abs(fit.spec_hat.theta - s.theta) < 2 * fit.se(0));
  CHECK(std::abs(fit.spec_hat.gamma - s.gamma) < 2 * fit.se(1));
  CHECK(psd(fit.cov_robust));
  CHECK(validate(fit.spec_hat).ok());
  for (Eigen::Index t = 0; t < p.x.size(); ++t)
    CHECK(fit.residuals_z(t) == doctest::Approx(fit.residuals_x(t) / std::sqrt(fit.sigma2_fitted(t))).epsilon(1e-13));
  CHECK(special_case_of(fit.spec_hat) == ModelClass::egarch);
}

TEST_CASE("seasonal fit recovers memory and is deterministic") {
  auto s = truth(0.35, 6);
  auto p = simulate_sfiegarch(s, 3000, SimOptions{-1, -1, 5, false});
  VolatilityConfig cfg;
  cfg.s = 6;
  auto a = fit_sfiegarch(p.x, cfg);
  auto b = fit_sfiegarch(p.x, cfg);
  CHECK(a.estimates == b.estimates);
  CHECK(a.loglik == b.loglik);
  CHECK(std::abs(a.spec_hat.d - 0.35) < 0.1);
  CHECK(psd(a.cov_robust));
  CHECK(a.k == 4);
  CHECK(a.aic == doctest::Approx(-2 * a.loglik + 8));
}

TEST_CASE("s = 1 uses the same path as the long-memory model") {
  auto s = truth(0.3, 1);
  auto p = simulate_sfiegarch(s, 1500, SimOptions{-1, 5000, 6, false});
  VolatilityConfig cfg;
  auto a = fit_sfiegarch(p.x, cfg);
  CHECK(special_case_of(a.spec_hat) == ModelClass::fiegarch);
  auto b = fit_sfiegarch(p.x, cfg);
  CHECK(a.estimates == b.estimates);
}

TEST_CASE("two-step fit") {
  auto s = truth(0.25, 2);
  auto p = simulate_sfiegarch(s, 2500, SimOptions{-1, 5000, 9, false});
  ArmaSpec arma;
  arma.mu = 0.05;
  arma.ma = {{1, 0.3}};
  Eigen::VectorXd r = simulate_returns(arma, p.x);
  VolatilityConfig cfg;
  cfg.s = 2;
  auto f = fit_two_step(r, ArmaLagSets{{}, {1}, true}, cfg, ArmaFitOptions{false});
  CHECK(f.k == 6);
  CHECK(f.arma_hat.ma.count(1) == 1);
  CHECK(std::abs(f.arma_hat.ma.at(1) - 0.3) < 0.08);
  CHECK(f.returns.size() == r.size());
  CHECK(f.bic == doctest::Approx(-2 * f.loglik + 6 * std::log(2500.0)));
}
