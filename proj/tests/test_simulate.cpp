#include "doctest.h"

#include <cmath>

#include "oracles.hpp"
#include "sfiegarch/acov.hpp"
#include "sfiegarch/coeffs.hpp"
#include "sfiegarch/error.hpp"
#include "sfiegarch/simulate.hpp"

using namespace sfg;

namespace {

SfiegarchSpec fig1() {
  SfiegarchSpec s;
  s.omega = 5.0;
  s.theta = -0.25;
  s.gamma = 0.24;
  s.d = 0.35;
  s.s = 6;
  return s;
}

// standard error of a sample mean under autocovariance gamma
double mean_se(const SecondOrder& so, int n) {
  double v = so.gamma_ln_sigma2(0);
  for (int h = 1; h < n; ++h) v += 2.0 * (1.0 - double(h) / n) * so.gamma_ln_sigma2(h);
  return std::sqrt(v / n);
}

double acf(const Eigen::VectorXd& x, int lag) {
  const double m = x.mean();
  const Eigen::ArrayXd c = x.array() - m;
  const long n = x.size();
  return (c.head(n - lag) * c.tail(n - lag)).sum() / c.square().sum();
}

}  // namespace

TEST_CASE("degenerate news impact gives constant volatility") {
  auto s = fig1();
  s.theta = 0.0;
  s.gamma = 0.0;
  SimOptions o;
  o.m_trunc = 100;
  o.seed = 1;
  CHECK_THROWS_AS(simulate_sfiegarch(s, 50, o), InvalidArgument);
  o.skip_validation = true;
  auto p = simulate_sfiegarch(s, 50, o);
  for (int t = 0; t < 50; ++t) CHECK(p.sigma2(t) == doctest::Approx(std::exp(5.0)).epsilon(1e-14));
}

TEST_CASE("refuses nonstationary memory") {
  auto s = fig1();
  s.d = 0.5;
  CHECK_THROWS_AS(simulate_sfiegarch(s, 10, SimOptions{}), InvalidArgument);
}

TEST_CASE("path invariants hold under the stored truncation") {
  auto s = fig1();
  s.alpha = {0.3};
  s.beta = {-0.2};
  SimOptions o;
  o.m_trunc = 300;
  o.burn_in = 50;
  o.seed = 5;
  auto p = simulate_sfiegarch(s, 200, o);
  CHECK(p.m_trunc == 300);
  CHECK(p.burn_in == 50);
  CHECK(p.x.size() == 200);
  for (int t = 0; t < 200; ++t) {
    CHECK(p.x(t) == doctest::Approx(std::sqrt(p.sigma2(t)) * p.z(t)).epsilon(1e-14));
    CHECK(std::log(p.sigma2(t)) == doctest::Approx(p.ln_sigma2(t)).epsilon(1e-14));
  }
  auto lam = lambda_coefficients(s, 301);
  const double m = std::sqrt(2.0 / M_PI);
  // points t > m_trunc see only emitted shocks
  auto q = simulate_sfiegarch(s, 700, SimOptions{0, 300, 9, false});
  for (int t = 301; t < 700; t += 37) {
    double v = s.omega;
    for (int k = 0; k <= 300; ++k) v += lam(k) * news_impact(q.z(t - 1 - k), s.theta, s.gamma, m);
    CHECK(q.ln_sigma2(t) == doctest::Approx(v).epsilon(1e-11));
  }
}

TEST_CASE("direct and FFT paths agree") {
  auto s = fig1();
  s.d = 0.2;
  auto small = simulate_sfiegarch(s, 2000, SimOptions{-1, 2000, 3, false});
  auto big = simulate_sfiegarch(s, 30000, SimOptions{-1, 2000, 3, false});
  for (int t = 0; t < 2000; t += 97) CHECK(small.ln_sigma2(t) == doctest::Approx(big.ln_sigma2(t)).epsilon(1e-10));
}

TEST_CASE("deterministic under seed") {
  auto s = fig1();
  auto a = simulate_sfiegarch(s, 100, SimOptions{-1, 1000, 42, false});
  auto b = simulate_sfiegarch(s, 100, SimOptions{-1, 1000, 42, false});
  auto c = simulate_sfiegarch(s, 100, SimOptions{-1, 1000, 43, false});
  CHECK(a.x == b.x);
  CHECK(a.x != c.x);
}

TEST_CASE("figure one mean of ln sigma^2") {
  auto s = fig1();
  SecondOrder so(s);
  const double se = mean_se(so, 2000);
  int inside = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto p = simulate_sfiegarch(s, 2000, SimOptions{-1, -1, seed, false});
    CHECK(p.m_trunc == default_truncation(s));
    if (std::abs(p.ln_sigma2.mean() - 5.0) < 3.0 * se) ++inside;
  }
  CHECK(inside >= 9);
}

TEST_CASE("ergodic mean over many seeds") {
  auto s = fig1();
  s.d = 0.2;
  s.s = 2;
  SecondOrder so(s);
  const int n = 200000;
  const double band = 4.0 * mean_se(so, n);
  int ok = 0;
  for (std::uint64_t seed = 100; seed < 150; ++seed) {
    auto p = simulate_sfiegarch(s, n, SimOptions{-1, 20000, seed, false});
    if (std::abs(p.ln_sigma2.mean() - s.omega) < band) ++ok;
  }
  CHECK(ok >= 48);
}

TEST_CASE("martingale difference") {
  auto s = fig1();
  const int n = 50000;
  auto p = simulate_sfiegarch(s, n, SimOptions{-1, 50000, 11, false});
  const double sd = std::sqrt(p.x.squaredNorm() / n);
  CHECK(std::abs(p.x.mean()) < 4.0 * sd / std::sqrt(double(n)));
  CHECK(std::abs(acf(p.x, 1)) < 2.0 / std::sqrt(double(n)));
}

TEST_CASE("kurtosis matches the closed form") {
  for (double d : {0.0, 0.25}) {
    SfiegarchSpec s;
    s.omega = 0.0;
    s.theta = 0.1;
    s.gamma = 0.2;
    s.d = d;
    s.s = 2;
    const int n = 1000000;
    auto p = simulate_sfiegarch(s, n, SimOptions{-1, 100000, 77, false});
    const double m2 = p.x.array().square().mean();
    const double m4 = p.x.array().pow(4).mean();
    const double k = kurtosis_asymmetry(s).kurtosis;
    CHECK(std::abs(m4 / (m2 * m2) / k - 1.0) < 0.10);
  }
}

TEST_CASE("negative memory alternates at seasonal lags") {
  auto s = fig1();
  s.d = -0.3;
  s.s = 4;
  s.omega = 0.0;
  const int n = 200000;
  auto p = simulate_sfiegarch(s, n, SimOptions{-1, 20000, 3, false});
  SecondOrder so(s);
  for (int h = 1; h <= 3; ++h) {
    const double theory = so.gamma_ln_sigma2(4 * h) / so.gamma_ln_sigma2(0);
    CHECK(theory < 0.0);
    CHECK(std::abs(acf(p.ln_sigma2, 4 * h) - theory) < 0.02);
  }
  CHECK(std::abs(acf(p.ln_sigma2, 2)) < 0.02);
}

TEST_CASE("returns recursion") {
  Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(300, -1.0, 2.0).array().sin();
  ArmaSpec wn;
  wn.mu = 0.3;
  auto r = simulate_returns(wn, x);
  CHECK((r.array() - 0.3 - x.array()).abs().maxCoeff() < 1e-15);

  ArmaSpec ma;
  ma.ma = {{1, 0.4}};
  r = simulate_returns(ma, x);
  CHECK(r(0) == x(0));
  for (int t = 1; t < 300; ++t) CHECK(r(t) == doctest::Approx(x(t) + 0.4 * x(t - 1)).epsilon(1e-15));

  ArmaSpec ar;
  ar.ar = {{1, 0.5}};
  ar.mu = 0.1;
  r = simulate_returns(ar, x);
  auto psi = arma_psi_weights(ar, 200);
  for (int t = 0; t < 300; ++t) {
    double v = ar.mu;
    for (int k = 0; k < 200 && k <= t; ++k) v += psi(k) * x(t - k);
    CHECK(std::abs(r(t) - v) < 1e-10);
  }
}
