#include "sfiegarch/innovations.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/trigamma.hpp>
#include <cmath>
#include <random>

#include "sfiegarch/error.hpp"

namespace sfg {

namespace bm = boost::math;

namespace {

constexpr double kPi = boost::math::constants::pi<double>();

void check_dist(const InnovationDist& dist) {
  if (dist.kind == InnovationDist::Kind::ged && !(dist.nu > 1.0 && std::isfinite(dist.nu)))
    throw InvalidArgument("GED requires nu > 1");
}

}  // namespace

double integrate_half_line(const std::function<double(double)>& f) {
  // tanh-sinh on (0,1] absorbs endpoint singularities; exp-sinh handles the tail
  bm::quadrature::tanh_sinh<double> ts;
  bm::quadrature::exp_sinh<double> es;
  double a = ts.integrate(f, 0.0, 1.0, 1e-13);
  double b = es.integrate([&](double x) { return f(x + 1.0); }, 1e-13);
  return a + b;
}

double integrate_real_line(const std::function<double(double)>& f) {
  return integrate_half_line(f) + integrate_half_line([&](double x) { return f(-x); });
}

double ged_scale(double nu) {
  return std::sqrt(std::pow(2.0, -2.0 / nu) * bm::tgamma(1.0 / nu) / bm::tgamma(3.0 / nu));
}

double log_density(const InnovationDist& dist, double z) {
  check_dist(dist);
  if (dist.kind == InnovationDist::Kind::gaussian) return -0.5 * z * z - 0.5 * std::log(2.0 * kPi);
  const double nu = dist.nu;
  const double lam = ged_scale(nu);
  return std::log(nu) - 0.5 * std::pow(std::abs(z / lam), nu) - std::log(lam) -
         (1.0 + 1.0 / nu) * std::log(2.0) - bm::lgamma(1.0 / nu);
}

double density(const InnovationDist& dist, double z) { return std::exp(log_density(dist, z)); }

double cdf(const InnovationDist& dist, double z) {
  check_dist(dist);
  if (dist.kind == InnovationDist::Kind::gaussian) return 0.5 * std::erfc(-z / std::sqrt(2.0));
  const double nu = dist.nu;
  const double w = 0.5 * std::pow(std::abs(z / ged_scale(nu)), nu);
  const double half = 0.5 * bm::gamma_p(1.0 / nu, w);
  return z >= 0 ? 0.5 + half : 0.5 - half;
}

double abs_moment(const InnovationDist& dist, double r) {
  check_dist(dist);
  if (!(r > -1.0)) throw InvalidArgument("abs_moment: r must exceed -1");
  const double nu = dist.shape();
  // |Z| = scale (2W)^{1/nu}, W ~ Gamma(1/nu)
  return std::pow(ged_scale(nu), r) * std::pow(2.0, r / nu) *
         std::exp(bm::lgamma((r + 1.0) / nu) - bm::lgamma(1.0 / nu));
}

double abs_mean(const InnovationDist& dist) {
  check_dist(dist);
  if (dist.kind == InnovationDist::Kind::gaussian) return std::sqrt(2.0 / kPi);
  const double nu = dist.nu;
  return bm::tgamma(2.0 / nu) / std::sqrt(bm::tgamma(1.0 / nu) * bm::tgamma(3.0 / nu));
}

double sigma_g_sq(const InnovationDist& dist, double theta, double gamma) {
  const double m = abs_mean(dist);
  const double sign_cross = 0.0;
  return theta * theta + gamma * gamma - (gamma * m) * (gamma * m) + 2.0 * theta * gamma * sign_cross;
}

double g_mgf_quadrature(const InnovationDist& dist, double b, double theta, double gamma) {
  const double m = abs_mean(dist);
  auto f = [&](double z) { return std::exp(b * news_impact(z, theta, gamma, m) + log_density(dist, z)); };
  return integrate_real_line(f);
}

namespace {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double gaussian_mgf(double b, double theta, double gamma) {
  const double u = b * (gamma - theta);
  const double v = b * (gamma + theta);
  return std::exp(-b * gamma * std::sqrt(2.0 / kPi)) *
         (std::exp(0.5 * u * u) * normal_cdf(u) + std::exp(0.5 * v * v) * normal_cdf(v));
}

// Sum over j of c^j Gamma((j+1)/nu) / (2 Gamma(1/nu) j!). Returns NaN if it fails to settle.
double ged_half_series(double c, double nu, double* max_term) {
  const double lg1 = bm::lgamma(1.0 / nu);
  double sum = 0.0;
  *max_term = 0.0;
  if (c == 0.0) return 0.5;
  const double lc = std::log(std::abs(c));
  for (int j = 0; j < 10000; ++j) {
    const double mag = std::exp(j * lc + bm::lgamma((j + 1.0) / nu) - bm::lgamma(j + 1.0) - lg1) * 0.5;
    const double term = (c < 0 && (j % 2 == 1)) ? -mag : mag;
    sum += term;
    *max_term = std::max(*max_term, mag);
    if (!std::isfinite(sum)) return std::nan("");
    if (j > 5 && mag < 1e-15 * std::max(std::abs(sum), 1e-300)) return sum;
  }
  return std::nan("");
}

}  // namespace

double g_mgf(const InnovationDist& dist, double b, double theta, double gamma) {
  check_dist(dist);
  if (!std::isfinite(b)) throw InvalidArgument("g_mgf: non-finite b");
  if (b == 0.0 || (theta == 0.0 && gamma == 0.0)) return 1.0;
  if (dist.kind == InnovationDist::Kind::gaussian) return gaussian_mgf(b, theta, gamma);
  const double nu = dist.nu;
  const double k = b * ged_scale(nu) * std::pow(2.0, 1.0 / nu);
  double m1 = 0.0, m2 = 0.0;
  const double s1 = ged_half_series(k * (gamma + theta), nu, &m1);
  const double s2 = ged_half_series(k * (gamma - theta), nu, &m2);
  const double total = s1 + s2;
  const bool settled = std::isfinite(total) && total > 0.0 && std::max(m1, m2) < 1e6 * total;
  if (!settled) return g_mgf_quadrature(dist, b, theta, gamma);
  return std::exp(-b * gamma * abs_mean(dist)) * total;
}

LnSqMoments ln_sq_moments(const InnovationDist& dist, double theta, double gamma) {
  check_dist(dist);
  LnSqMoments r;
  const double em = abs_mean(dist);
  if (dist.kind == InnovationDist::Kind::gaussian) {
    const double eg = boost::math::constants::euler<double>();
    r.mean = -eg - std::log(2.0);
    r.var = kPi * kPi / 2.0;
    r.c1 = gamma * em * 2.0 * std::log(2.0);
    return r;
  }
  // ln Z^2 = 2 ln scale + (2/nu)(ln 2 + ln W), W ~ Gamma(1/nu); |Z|-tilting shifts W's shape to 2/nu
  const double nu = dist.nu;
  r.mean = 2.0 * std::log(ged_scale(nu)) + 2.0 / nu * (std::log(2.0) + bm::digamma(1.0 / nu));
  r.var = 4.0 / (nu * nu) * bm::trigamma(1.0 / nu);
  r.c1 = gamma * em * 2.0 / nu * (bm::digamma(2.0 / nu) - bm::digamma(1.0 / nu));
  (void)theta;
  return r;
}

InnovationMoments innovation_moments(const InnovationDist& dist, double theta, double gamma) {
  InnovationMoments m;
  m.abs_mean = abs_mean(dist);
  m.sign_cross = 0.0;
  m.sigma_g_sq = sigma_g_sq(dist, theta, gamma);
  auto l = ln_sq_moments(dist, theta, gamma);
  m.c1 = l.c1;
  m.ln_sq_mean = l.mean;
  m.ln_sq_var = l.var;
  m.z4 = abs_moment(dist, 4.0);
  m.z3 = 0.0;
  return m;
}

Eigen::VectorXd sample(const InnovationDist& dist, Eigen::Index n, std::uint64_t seed) {
  check_dist(dist);
  if (n < 0) throw InvalidArgument("sample: negative length");
  std::mt19937_64 rng(seed);
  Eigen::VectorXd z(n);
  if (dist.kind == InnovationDist::Kind::gaussian) {
    std::normal_distribution<double> nd(0.0, 1.0);
    for (Eigen::Index i = 0; i < n; ++i) z(i) = nd(rng);
    return z;
  }
  const double nu = dist.nu;
  const double lam = ged_scale(nu);
  std::gamma_distribution<double> gd(1.0 / nu, 1.0);
  std::bernoulli_distribution coin(0.5);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double w = gd(rng);
    const double a = lam * std::pow(2.0 * w, 1.0 / nu);
    z(i) = coin(rng) ? a : -a;
  }
  return z;
}

}  // namespace sfg
