#include "doctest.h"

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>

#include "oracles.hpp"
#include "sfiegarch/error.hpp"
#include "sfiegarch/innovations.hpp"

using namespace sfg;

namespace {

InnovationDist dist_of(double nu) { return nu == 2.0 ? InnovationDist::gaussian() : InnovationDist::ged(nu); }

}  // namespace

TEST_CASE("unit variance fixes the GED scale exponent") {
  for (double nu : {1.2, 1.5, 2.0, 3.0, 5.0}) {
    const double lam = ged_scale(nu);
    const double mass = oracle::integrate([&](double z) { return oracle::ged_density(z, nu, lam); });
    const double var = oracle::integrate([&](double z) { return z * z * oracle::ged_density(z, nu, lam); });
    CHECK(std::abs(mass - 1.0) < 1e-8);
    CHECK(std::abs(var - 1.0) < 1e-8);
    // the 2^{1/nu} exponent variant is not unit variance away from nu = 2
    const double alt = std::sqrt(std::pow(2.0, 1.0 / nu) * boost::math::tgamma(1.0 / nu) / boost::math::tgamma(3.0 / nu));
    const double alt_var = oracle::integrate([&](double z) { return z * z * oracle::ged_density(z, nu, alt); });
    if (nu != 2.0) CHECK(std::abs(alt_var - 1.0) > 1e-3);
    CHECK(density(dist_of(nu), 0.7) == doctest::Approx(oracle::ged_density(0.7, nu, lam)).epsilon(1e-13));
  }
}

TEST_CASE("abs_mean closed forms") {
  CHECK(abs_mean(InnovationDist::gaussian()) == doctest::Approx(0.7978845608028654).epsilon(1e-15));
  CHECK(abs_mean(InnovationDist::ged(2.0)) == doctest::Approx(std::sqrt(2.0 / M_PI)).epsilon(1e-14));
  auto d = InnovationDist::ged(1.5);
  const double q = oracle::integrate([&](double z) { return std::abs(z) * density(d, z); });
  CHECK(std::abs(abs_mean(d) - q) < 1e-8);
  CHECK_THROWS_AS(abs_mean(InnovationDist::ged(1.0)), InvalidArgument);
  CHECK(abs_moment(d, 4.0) == doctest::Approx(boost::math::tgamma(5 / 1.5) * boost::math::tgamma(1 / 1.5) /
                                               std::pow(boost::math::tgamma(3 / 1.5), 2)));
}

TEST_CASE("cdf matches integrated density") {
  for (double nu : {1.3, 2.0, 4.0}) {
    auto d = dist_of(nu);
    for (double z : {-2.1, -0.3, 0.0, 0.8, 3.0}) {
      using boost::math::quadrature::gauss_kronrod;
      double err = 0.0;
      const double lower = gauss_kronrod<double, 61>::integrate([&](double x) { return density(d, x); },
                                                                -std::numeric_limits<double>::infinity(), z, 15,
                                                                1e-13, &err);
      CHECK(std::abs(cdf(d, z) - lower) < 1e-9);
    }
  }
}

TEST_CASE("sigma_g_sq uses the squared absolute mean") {
  for (double nu : {1.2, 1.5, 2.0, 3.0, 5.0}) {
    auto d = dist_of(nu);
    const double th = 0.25, ga = 0.24;
    const double m = abs_mean(d);
    auto g = [&](double z) { return news_impact(z, th, ga, m); };
    const double var = oracle::integrate([&](double z) { return g(z) * g(z) * density(d, z); });
    CHECK(std::abs(sigma_g_sq(d, th, ga) - var) < 1e-8);
  }
  double prev = 1e9;
  for (double nu : {1.2, 1.5, 2.0, 3.0, 5.0}) {
    const double v = sigma_g_sq(dist_of(nu), 0.25, 0.24);
    CHECK(v < prev);
    prev = v;
  }
  CHECK(sigma_g_sq(InnovationDist::gaussian(), 0.1, 0.0) > 0.0);
}

TEST_CASE("g_mgf against quadrature") {
  auto gauss = InnovationDist::gaussian();
  CHECK(g_mgf(gauss, 0.0, 0.3, 0.2) == 1.0);
  CHECK(g_mgf(gauss, 2.0, 0.0, 0.0) == 1.0);
  const double m = abs_mean(gauss);
  const double q = oracle::integrate(
      [&](double z) { return std::exp(news_impact(z, 0.25, 0.24, m) + log_density(gauss, z)); });
  CHECK(std::abs(g_mgf(gauss, 1.0, 0.25, 0.24) - q) < 1e-10);
  for (double nu : {1.01, 1.2, 1.5, 3.0, 5.0}) {
    auto d = InnovationDist::ged(nu);
    const double mm = abs_mean(d);
    for (double b : {-2.0, -0.5, 0.3, 1.0, 2.0}) {
      const double oq = oracle::integrate(
          [&](double z) { return std::exp(b * news_impact(z, -0.25, 0.24, mm) + log_density(d, z)); });
      CHECK(std::abs(g_mgf(d, b, -0.25, 0.24) / oq - 1.0) < 1e-9);
    }
  }
}

TEST_CASE("g_mgf is second order at zero") {
  for (double nu : {1.5, 2.0, 4.0}) {
    auto d = dist_of(nu);
    const double c = sigma_g_sq(d, 0.3, 0.2);
    for (double b : {1e-2, 1e-3, 1e-4}) {
      // E g = 0, so the linear term vanishes
      CHECK(std::abs(g_mgf(d, b, 0.3, 0.2) - 1.0) <= c * b * b);
    }
  }
}

TEST_CASE("ln Z^2 moments") {
  auto gauss = InnovationDist::gaussian();
  auto l = ln_sq_moments(gauss, 0.0, 0.24);
  CHECK(l.mean == doctest::Approx(-1.2703628454614782).epsilon(1e-14));
  CHECK(l.var == doctest::Approx(4.934802200544679).epsilon(1e-14));
  for (double nu : {1.2, 1.5, 2.0, 3.0, 5.0}) {
    auto d = dist_of(nu);
    const double th = 0.25, ga = 0.24;
    auto lm = ln_sq_moments(d, th, ga);
    const double mean = oracle::integrate([&](double z) { return std::log(z * z) * density(d, z); });
    const double sq = oracle::integrate([&](double z) { return std::pow(std::log(z * z), 2) * density(d, z); });
    const double m = abs_mean(d);
    const double c1 = oracle::integrate(
        [&](double z) { return news_impact(z, th, ga, m) * std::log(z * z) * density(d, z); });
    CHECK(std::abs(lm.mean - mean) < 1e-7);
    CHECK(std::abs(lm.var - (sq - mean * mean)) < 1e-6);
    CHECK(std::abs(lm.c1 - c1) < 1e-7);
  }
  // theta drops out for symmetric laws
  CHECK(ln_sq_moments(gauss, 0.7, 0.24).c1 == ln_sq_moments(gauss, 0.0, 0.24).c1);
}

TEST_CASE("sampling moments") {
  auto g = sample(InnovationDist::gaussian(), 1000000, 7);
  CHECK(std::abs(g.mean()) < 4.0 / 1000.0);
  auto h = sample(InnovationDist::ged(1.5), 1000000, 9);
  const double var = h.squaredNorm() / h.size();
  const double kurt = h.array().pow(4).mean() / (var * var);
  const double target = abs_moment(InnovationDist::ged(1.5), 4.0);
  // kurtosis standard error is roughly sqrt((E Z^8 - E Z^4^2)/n)
  CHECK(std::abs(var - 1.0) < 0.01);
  CHECK(std::abs(kurt - target) < 0.05);
  auto a = sample(InnovationDist::ged(1.5), 100, 3);
  auto b = sample(InnovationDist::ged(1.5), 100, 3);
  CHECK(a == b);
}

TEST_CASE("innovation moments by Monte Carlo") {
  for (double nu : {1.5, 2.0}) {
    auto d = dist_of(nu);
    auto z = sample(d, 10000000, 21);
    auto im = innovation_moments(d, -0.2, 0.3);
    const Eigen::ArrayXd l = (z.array().square()).log();
    const double lm = l.mean();
    const double lv = (l - lm).square().mean();
    CHECK(std::abs(lm - im.ln_sq_mean) < 5.0 * std::sqrt(im.ln_sq_var / z.size()));
    CHECK(std::abs(lv - im.ln_sq_var) < 0.01 * im.ln_sq_var);
    Eigen::ArrayXd g = -0.2 * z.array() + 0.3 * (z.array().abs() - im.abs_mean);
    const double c1 = ((g - g.mean()) * (l - lm)).mean();
    CHECK(std::abs(c1 - im.c1) < 0.005);
    CHECK(std::abs(z.array().abs().mean() - im.abs_mean) < 1e-3);
  }
}
