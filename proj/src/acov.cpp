#include "sfiegarch/acov.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>

#include "sfiegarch/coeffs.hpp"
#include "sfiegarch/error.hpp"

namespace sfg {

namespace {

constexpr long kAnchor = 4096;     // beyond this index, ratio tables switch to Gamma ratios
constexpr int kLambdaCache = 20000;

// Gamma(a) / Gamma(a + delta) for a > 0
double gamma_ratio(double a, double delta) { return boost::math::tgamma_delta_ratio(a, delta); }

}  // namespace

SecondOrder::SecondOrder(const SfiegarchSpec& spec) : spec_(spec) {
  require_valid(spec, true, true);
  mom_ = innovation_moments(spec.innovation, spec.theta, spec.gamma);
  const Poly a = spec.alpha_poly();
  const Poly b = spec.beta_poly();
  const int nf = arma_ratio_length(a, b, 1e-18);
  f_ = series_divide(a, b, spec.q() == 0 ? spec.p() : nf);
  const Eigen::Index K = f_.size();
  gA_.resize(K);
  for (Eigen::Index h = 0; h < K; ++h) gA_(h) = f_.head(K - h).dot(f_.tail(K - h));

  const double d = spec.d;
  gv_.resize(kAnchor);
  pi_.resize(kAnchor);
  gv_(0) = std::exp(std::lgamma(1.0 - 2.0 * d) - 2.0 * std::lgamma(1.0 - d));
  pi_(0) = 1.0;
  for (long j = 1; j < kAnchor; ++j) {
    gv_(j) = gv_(j - 1) * (j - 1 + d) / (j - d);
    pi_(j) = pi_(j - 1) * (j - 1 + d) / static_cast<double>(j);
  }
  lam_ = lambda_coefficients(spec, kLambdaCache);
  unit_var_ = unit_ln_sigma2(0);
}

double SecondOrder::unit_gamma_V(long j) const {
  j = std::abs(j);
  if (j < kAnchor) return gv_(j);
  if (spec_.d == 0.0) return 0.0;
  const long a = kAnchor - 1;
  const double d = spec_.d;
  // Gamma(j+d)/Gamma(j+1-d) relative to the anchor
  return gv_(a) * gamma_ratio(j + d, 1.0 - 2.0 * d) / gamma_ratio(a + d, 1.0 - 2.0 * d);
}

double SecondOrder::pi_seasonal(long j) const {
  if (j < 0) return 0.0;
  if (j < kAnchor) return pi_(j);
  if (spec_.d == 0.0) return 0.0;
  const long a = kAnchor - 1;
  const double d = spec_.d;
  return pi_(a) * gamma_ratio(j + d, 1.0 - d) / gamma_ratio(a + d, 1.0 - d);
}

double SecondOrder::lambda(long k) const {
  if (k < 0) return 0.0;
  if (k < lam_.size()) return lam_(k);
  const int s = spec_.s;
  double acc = 0.0;
  for (Eigen::Index i = 0; i < f_.size() && i <= k; ++i)
    if ((k - i) % s == 0) acc += f_(i) * pi_seasonal((k - i) / s);
  return acc;
}

double SecondOrder::gamma_arma(long h) const {
  h = std::abs(h);
  return h < gA_.size() ? gA_(h) : 0.0;
}

double SecondOrder::gamma_seasonal(long h) const {
  h = std::abs(h);
  if (h % spec_.s != 0) return 0.0;
  return mom_.sigma_g_sq * unit_gamma_V(h / spec_.s);
}

double SecondOrder::unit_ln_sigma2(long h) const {
  h = std::abs(h);
  const long s = spec_.s;
  const long K = gA_.size() - 1;
  // sum over lags l with s | (h - l), |l| <= K
  long l0 = h - s * ((h + K) / s);
  double acc = 0.0;
  for (long l = l0; l <= K; l += s) {
    if (l < -K) continue;
    const double a = gA_(std::abs(l));
    if (a == 0.0) continue;
    acc += a * unit_gamma_V((h - l) / s);
  }
  return acc;
}

double SecondOrder::gamma_ln_sigma2(long h) const { return mom_.sigma_g_sq * unit_ln_sigma2(h); }

double SecondOrder::gamma_ln_x2(long h) const {
  double v = gamma_ln_sigma2(h);
  if (h == 0) return v + mom_.ln_sq_var;
  return v + mom_.c1 * lambda(std::abs(h) - 1);
}

TailParams SecondOrder::tail() const {
  TailParams t;
  const double ratio = spec_.alpha_poly().sum() / spec_.beta_poly().sum();
  t.alpha1_over_beta1 = ratio;
  t.sum_gamma_A = ratio * ratio;
  const double d = spec_.d;
  if (d != 0.0) {
    const double gd = boost::math::tgamma(d);
    t.long_memory_const =
        mom_.sigma_g_sq * std::exp(std::lgamma(1.0 - 2.0 * d) - std::lgamma(1.0 - d)) / gd * t.sum_gamma_A;
    t.short_side_const = mom_.c1 * ratio / gd;
  }
  t.exponent = d > 0 ? 2.0 * d - 1.0 : d - 1.0;
  return t;
}

double gamma_arma(const SfiegarchSpec& spec, long h) { return SecondOrder(spec).gamma_arma(h); }
double gamma_seasonal(const SfiegarchSpec& spec, long h) {
  if (spec.d >= 0.5) throw InvalidArgument("gamma_seasonal: d >= 0.5");
  return SecondOrder(spec).gamma_seasonal(h);
}
double gamma_ln_sigma2(const SfiegarchSpec& spec, long h) { return SecondOrder(spec).gamma_ln_sigma2(h); }
double gamma_ln_x2(const SfiegarchSpec& spec, long h) { return SecondOrder(spec).gamma_ln_x2(h); }

AcovReport acov_report(const SfiegarchSpec& spec, int max_lag) {
  if (max_lag < 0) throw InvalidArgument("acov_report: max_lag < 0");
  SecondOrder so(spec);
  AcovReport r;
  r.max_lag = max_lag;
  r.gamma_A.resize(max_lag + 1);
  r.gamma_V.resize(max_lag + 1);
  r.gamma_ln_sigma2.resize(max_lag + 1);
  r.gamma_ln_x2.resize(max_lag + 1);
  for (int h = 0; h <= max_lag; ++h) {
    r.gamma_A(h) = so.gamma_arma(h);
    r.gamma_V(h) = so.gamma_seasonal(h);
    r.gamma_ln_sigma2(h) = so.gamma_ln_sigma2(h);
    r.gamma_ln_x2(h) = so.gamma_ln_x2(h);
  }
  r.tail = so.tail();
  return r;
}

double log_mgf_product(const SecondOrder& so, double b) {
  const auto& spec = so.spec();
  if (b == 0.0 || (spec.theta == 0.0 && spec.gamma == 0.0)) return 0.0;
  double acc = 0.0;
  double head_sq = 0.0;
  for (long k = 0; k < kLambdaCache; ++k) {
    const double l = so.lambda(k);
    if (l == 0.0) continue;
    const double m = g_mgf(spec.innovation, b * l, spec.theta, spec.gamma);
    if (!(m > 0.0) || !std::isfinite(m)) return std::numeric_limits<double>::infinity();
    acc += std::log(m);
    head_sq += l * l;
  }
  const double tail_sq = std::max(0.0, so.sum_lambda_sq() - head_sq);
  return acc + 0.5 * b * b * so.moments().sigma_g_sq * tail_sq;
}

MomentResult unconditional_moment(const SfiegarchSpec& spec, double r) {
  SecondOrder so(spec);
  MomentResult res;
  const double lp = 0.5 * r * spec.omega + log_mgf_product(so, 0.5 * r);
  if (!std::isfinite(lp)) {
    res.finite = false;
    res.sigma_r = res.abs_x_r = std::numeric_limits<double>::infinity();
    return res;
  }
  res.sigma_r = std::exp(lp);
  res.abs_x_r = res.sigma_r * abs_moment(spec.innovation, r);
  return res;
}

KurtosisAsymmetry kurtosis_asymmetry(const SfiegarchSpec& spec) {
  SecondOrder so(spec);
  const double l1 = log_mgf_product(so, 1.0);
  const double l2 = log_mgf_product(so, 2.0);
  const double l15 = log_mgf_product(so, 1.5);
  if (!std::isfinite(l1) || !std::isfinite(l2) || !std::isfinite(l15))
    throw NumericFailure("kurtosis_asymmetry: divergent moment product");
  KurtosisAsymmetry ka;
  ka.kurtosis = so.moments().z4 * std::exp(l2 - 2.0 * l1);
  ka.asymmetry = so.moments().z3 * std::exp(l15 - 1.5 * l1);
  return ka;
}

}  // namespace sfg
