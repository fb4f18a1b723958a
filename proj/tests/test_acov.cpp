#include "doctest.h"

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "sfiegarch/acov.hpp"
#include "sfiegarch/innovations.hpp"

using namespace sfg;
using boost::math::tgamma;

namespace {

SfiegarchSpec plain(double d, int s) {
  SfiegarchSpec x;
  x.theta = 0.25;
  x.gamma = 0.24;
  x.d = d;
  x.s = s;
  return x;
}

// sigma_g^2 sum_k lambda_k lambda_{k+h}: exact to M, then the j^{2d-2} tail per residue class
double ma_oracle(const SfiegarchSpec& sp, int h, int M) {
  std::vector<double> pi(M / sp.s + 2, 0.0);
  pi[0] = 1.0;
  for (std::size_t j = 1; j < pi.size(); ++j) pi[j] = pi[j - 1] * (j - 1 + sp.d) / j;
  std::vector<double> frac(M + h + 1, 0.0);
  for (std::size_t j = 0; j * sp.s <= static_cast<std::size_t>(M + h) && j < pi.size(); ++j) frac[j * sp.s] = pi[j];
  auto num = oracle::multiply(oracle::lag_poly(sp.alpha), frac, M + h);
  auto lam = oracle::divide(num, oracle::lag_poly(sp.beta), M + h);
  long double acc = 0.0L;
  for (int k = 0; k + h <= M + h && k <= M; ++k) acc += static_cast<long double>(lam[k]) * lam[k + h];
  auto f = oracle::divide(oracle::lag_poly(sp.alpha), oracle::lag_poly(sp.beta), 400);
  std::vector<double> F(sp.s, 0.0);
  for (int i = 0; i <= 400; ++i) F[i % sp.s] += f[i];
  const double J = double(M) / sp.s + 0.5;
  double tail = 0.0;
  if (sp.d != 0.0) {
    for (int r = 0; r < sp.s; ++r) tail += F[r] * F[(r + h) % sp.s];
    tail *= std::pow(J, 2 * sp.d - 1) / ((1 - 2 * sp.d) * std::pow(tgamma(sp.d), 2));
  }
  return sigma_g_sq(sp.innovation, sp.theta, sp.gamma) * double(acc + tail);
}

}  // namespace

TEST_CASE("gamma_arma examples") {
  auto s = plain(0.2, 2);
  CHECK(gamma_arma(s, 0) == 1.0);
  CHECK(gamma_arma(s, 3) == 0.0);
  s.alpha = {0.4};
  CHECK(gamma_arma(s, 0) == doctest::Approx(1.16).epsilon(1e-14));
  CHECK(gamma_arma(s, 1) == doctest::Approx(-0.4).epsilon(1e-14));
  CHECK(gamma_arma(s, -1) == gamma_arma(s, 1));
  CHECK(gamma_arma(s, 2) == 0.0);
  s.beta = {0.6};
  // f_i = 0.6^{i-1}(0.6 - 0.4) for i >= 1, f_0 = 1
  double g0 = 1.0 + 0.04 / (1 - 0.36), g1 = 0.2 + 0.04 * 0.6 / (1 - 0.36);
  CHECK(gamma_arma(s, 0) == doctest::Approx(g0).epsilon(1e-13));
  CHECK(gamma_arma(s, 1) == doctest::Approx(g1).epsilon(1e-13));
  for (int h = 0; h < 10; ++h) CHECK(gamma_arma(s, h) == gamma_arma(s, -h));
}

TEST_CASE("gamma_seasonal examples") {
  auto s = plain(0.3, 4);
  const double sg = sigma_g_sq(s.innovation, s.theta, s.gamma);
  CHECK(gamma_seasonal(s, 0) == doctest::Approx(sg * tgamma(0.4) / std::pow(tgamma(0.7), 2)).epsilon(1e-13));
  CHECK(gamma_seasonal(s, 5) == 0.0);
  CHECK(gamma_seasonal(s, -8) == gamma_seasonal(s, 8));
  // reflection form at small lags
  for (int h = 1; h < 6; ++h) {
    const double ref = sg * std::pow(-1.0, h) * tgamma(0.4) / (tgamma(0.7 + h) * tgamma(0.7 - h));
    CHECK(gamma_seasonal(s, 4 * h) == doctest::Approx(ref).epsilon(1e-12));
  }
  auto w = plain(0.0, 3);
  CHECK(gamma_seasonal(w, 0) == doctest::Approx(sigma_g_sq(w.innovation, w.theta, w.gamma)).epsilon(1e-15));
  CHECK(gamma_seasonal(w, 3) == 0.0);
  auto a = plain(0.4, 1);
  const double asym = sg * tgamma(0.2) / (tgamma(0.6) * tgamma(0.4)) * std::pow(1000.0, -0.2);
  CHECK(std::abs(gamma_seasonal(a, 1000) / asym - 1.0) < 0.01);
  // large lags stay finite through the ratio form
  CHECK(std::isfinite(gamma_seasonal(a, 10000000)));
  CHECK(gamma_seasonal(a, 10000000) > 0.0);
  auto n = plain(-0.3, 2);
  CHECK(gamma_seasonal(n, 2) < 0.0);
  CHECK(gamma_seasonal(n, 4) < 0.0);
}

TEST_CASE("gamma_V against the ARFIMA MA sum") {
  for (double d : {-0.4, -0.1, 0.15, 0.3}) {
    auto s = plain(d, 3);
    for (int h : {0, 1, 2, 7}) CHECK(gamma_seasonal(s, 3 * h) == doctest::Approx(ma_oracle(s, 3 * h, 600000)).epsilon(1e-6));
  }
}

TEST_CASE("gamma_ln_sigma2 reduces and is even") {
  auto s = plain(0.25, 2);
  for (int h = 0; h < 8; ++h) CHECK(gamma_ln_sigma2(s, h) == doctest::Approx(gamma_seasonal(s, h)).epsilon(1e-13));
  s.alpha = {0.3};
  for (int h = 0; h < 8; ++h) CHECK(gamma_ln_sigma2(s, h) == gamma_ln_sigma2(s, -h));
  for (int h = 0; h < 8; ++h) CHECK(gamma_ln_x2(s, h) == gamma_ln_x2(s, -h));
  SecondOrder so(s);
  const auto& m = so.moments();
  CHECK(so.gamma_ln_x2(0) == doctest::Approx(so.gamma_ln_sigma2(0) + m.ln_sq_var).epsilon(1e-15));
  for (int h = 1; h < 8; ++h)
    CHECK(so.gamma_ln_x2(h) == doctest::Approx(so.gamma_ln_sigma2(h) + m.c1 * so.lambda(h - 1)).epsilon(1e-14));
}

TEST_CASE("oracle equivalence over random specs") {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 20; ++i) {
    auto s = oracle::random_spec(rng, -0.45, 0.3);
    SecondOrder so(s);
    for (int h : {0, 1, 2, 3, 5, 6, 7, 12, 19, 30}) {
      const double o = ma_oracle(s, h, 1000000);
      const double v = so.gamma_ln_sigma2(h);
      CHECK(std::abs(v - o) <= 1e-6 * std::max(std::abs(o), so.gamma_ln_sigma2(0) * 1e-3));
    }
    CHECK(so.sum_lambda_sq() * sigma_g_sq(s.innovation, s.theta, s.gamma) ==
          doctest::Approx(so.gamma_ln_sigma2(0)).epsilon(1e-13));
  }
}

TEST_CASE("decay constant stabilizes") {
  for (double d : {0.35, 0.4, 0.45}) {
    auto s = plain(d, 3);
    s.alpha = {0.2};
    s.beta = {0.5};
    SecondOrder so(s);
    auto block = [&](long h) {
      double v = 0.0;
      for (int r = 0; r < 3; ++r) v += so.gamma_ln_x2(3 * h + r);
      return v * std::pow(double(h), 1 - 2 * d);
    };
    const double a = block(2000), b = block(4000);
    CHECK(std::abs(b / a - 1.0) < 0.02);
    auto t = so.tail();
    CHECK(std::abs(b / t.long_memory_const - 1.0) < std::abs(a / t.long_memory_const - 1.0));
    CHECK(std::abs(b / t.long_memory_const - 1.0) < 0.1);
    CHECK(t.sum_gamma_A == doctest::Approx(std::pow(0.8 / 0.5, 2)).epsilon(1e-12));
    CHECK(t.exponent == doctest::Approx(2 * d - 1));
  }
}

TEST_CASE("acov_report fields") {
  auto s = plain(0.3, 2);
  auto r = acov_report(s, 10);
  CHECK(r.max_lag == 10);
  CHECK(r.gamma_V.size() == 11);
  CHECK(r.gamma_V(3) == 0.0);
  CHECK(r.gamma_ln_x2(0) > r.gamma_ln_sigma2(0));
}

TEST_CASE("unconditional moments") {
  auto s = plain(0.2, 2);
  s.omega = 0.0;
  s.theta = 0.0;
  s.gamma = 0.0;
  auto m = unconditional_moment(s, 2.0);
  CHECK(m.abs_x_r == doctest::Approx(1.0).epsilon(1e-15));
  s.omega = 1.3;
  CHECK(unconditional_moment(s, 2.0).abs_x_r == doctest::Approx(std::exp(1.3)).epsilon(1e-14));

  auto g = plain(0.3, 2);
  g.innovation = InnovationDist::ged(1.4);
  g.alpha = {0.2};
  auto a = unconditional_moment(g, 3.0);
  g.theta = -g.theta;
  auto b = unconditional_moment(g, 3.0);
  CHECK(std::abs(a.abs_x_r - b.abs_x_r) <= 1e-12 * a.abs_x_r);
  CHECK(a.finite);
}

TEST_CASE("kurtosis and asymmetry") {
  auto s = plain(0.2, 2);
  s.theta = 0.0;
  s.gamma = 0.0;
  auto k = kurtosis_asymmetry(s);
  CHECK(k.kurtosis == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(k.asymmetry == 0.0);
  auto t = plain(0.2, 2);
  auto kt = kurtosis_asymmetry(t);
  CHECK(kt.kurtosis > 3.0);
  CHECK(kt.asymmetry == 0.0);
}
