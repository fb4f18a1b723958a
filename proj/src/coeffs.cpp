#include "sfiegarch/coeffs.hpp"

#include <algorithm>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <string>

#include "sfiegarch/error.hpp"

namespace sfg {

namespace {

void check_denominator(const Poly& beta, const char* what) {
  const double r = min_root_modulus(beta);
  if (!(r > 1.0 + kRootTol))
    throw InvalidArgument(std::string(what) + " has a root in the closed unit disk (modulus " +
                          std::to_string(r) + ")");
}

}  // namespace

Eigen::VectorXd seasonal_pi(double d, int s, int m) {
  if (!std::isfinite(d)) throw InvalidArgument("seasonal_pi: non-finite d");
  if (s < 1 || m < 0) throw InvalidArgument("seasonal_pi: need s >= 1 and m >= 0");
  Eigen::VectorXd pi = Eigen::VectorXd::Zero(m + 1);
  double delta = 1.0;
  for (int j = 0; j * static_cast<long>(s) <= m; ++j) {
    pi(j * s) = delta;
    delta *= (j + d) / (j + 1.0);
  }
  return pi;
}

Eigen::VectorXd arma_ratio_coeffs(const Poly& alpha, const Poly& beta, int m) {
  check_denominator(beta, "beta(z)");
  if (trim(alpha).size() > 1 && trim(beta).size() > 1 &&
      normalized_resultant(alpha, beta) < kResultantTol)
    throw InvalidArgument("alpha(z) and beta(z) share a common root");
  return series_divide(alpha, beta, m);
}

Eigen::VectorXd lambda_recurrence(const SfiegarchSpec& spec, int m) {
  require_valid(spec, true, true);
  if (m < 0) throw InvalidArgument("lambda_recurrence: m < 0");
  const int p = spec.p();
  const int q = spec.q();
  const int s = spec.s;
  // beta_0 = alpha_0 = -1
  std::vector<double> beta(q + 1), alpha(p + 1);
  beta[0] = alpha[0] = -1.0;
  for (int j = 1; j <= q; ++j) beta[j] = spec.beta[j - 1];
  for (int i = 1; i <= p; ++i) alpha[i] = spec.alpha[i - 1];
  // delta*_{d,n}: coefficients of (1 - z)^d, used at seasonal indices
  Eigen::VectorXd dstar = seasonal_pi(-spec.d, 1, m / s + 1);

  // w_n = sum_j beta_j delta*_{d,(n-j)/s}, the weight on lambda_{k-n}
  Eigen::VectorXd w = Eigen::VectorXd::Zero(m + 1);
  for (int n = 1; n <= m; ++n) {
    double acc = 0.0;
    for (int j = 0; j <= std::min(n, q); ++j)
      if ((n - j) % s == 0) acc += beta[j] * dstar((n - j) / s);
    w(n) = acc;
  }
  std::vector<int> support;
  for (int n = 1; n <= m; ++n)
    if (w(n) != 0.0) support.push_back(n);

  Eigen::VectorXd lam = Eigen::VectorXd::Zero(m + 1);
  lam(0) = 1.0;
  for (int k = 1; k <= m; ++k) {
    double acc = k <= p ? -alpha[k] : 0.0;
    for (int n : support) {
      if (n > k) break;
      acc += lam(k - n) * w(n);
    }
    lam(k) = acc;
  }
  return lam;
}

int arma_ratio_length(const Poly& alpha, const Poly& beta, double tol) {
  const double rho = min_root_modulus(beta);
  const int base = static_cast<int>(alpha.size() + beta.size()) + 8;
  if (!std::isfinite(rho)) return static_cast<int>(alpha.size());
  // |f_k| <= C k^{q} rho^{-k}; generous multiplicity allowance
  const double rate = std::log(rho);
  const double need = (-std::log(tol) + 10.0 * std::log(1.0 + beta.size())) / rate;
  return std::min<int>(base + static_cast<int>(std::ceil(need * 1.2)), 2000000);
}

Eigen::VectorXd lambda_coefficients(const SfiegarchSpec& spec, int m) {
  require_valid(spec, true, true);
  if (m < 0) throw InvalidArgument("lambda_coefficients: m < 0");
  const Poly a = spec.alpha_poly();
  const Poly b = spec.beta_poly();
  const int nf = std::min(m, arma_ratio_length(a, b));
  Eigen::VectorXd f = series_divide(a, b, nf);
  Eigen::VectorXd pi = seasonal_pi(spec.d, spec.s, m);
  Eigen::VectorXd lam = Eigen::VectorXd::Zero(m + 1);
  const int s = spec.s;
  for (int i = 0; i <= nf; ++i) {
    const double fi = f(i);
    if (fi == 0.0) continue;
    for (int k = i; k <= m; k += s) lam(k) += fi * pi(k - i);
  }
  return lam;
}

namespace {

double ratio_at_one(const SfiegarchSpec& spec) {
  const Poly a = spec.alpha_poly();
  const Poly b = spec.beta_poly();
  return a.sum() / b.sum();
}

}  // namespace

double lambda_asymptotic(const SfiegarchSpec& spec, int k, int r) {
  if (spec.d >= 0.5) throw InvalidArgument("lambda_asymptotic: d >= 0.5");
  if (k < 1 || r < 0 || r >= spec.s) throw InvalidArgument("lambda_asymptotic: need k >= 1, 0 <= r < s");
  const double ratio = ratio_at_one(spec);
  if (ratio == 0.0 || spec.d == 0.0) return 0.0;
  const double K = static_cast<double>(spec.s) * k + r;
  return std::pow(spec.s, 1.0 - spec.d) / (boost::math::tgamma(spec.d) * std::pow(K, 1.0 - spec.d)) * ratio;
}

double truncation_bound(const SfiegarchSpec& spec, double eps) {
  if (spec.d >= 0.5) throw InvalidArgument("truncation_bound: d >= 0.5");
  const double ratio = std::abs(ratio_at_one(spec));
  if (ratio == 0.0 || spec.d == 0.0) return 0.0;
  const double g = std::abs(boost::math::tgamma(spec.d));
  return spec.s * std::pow(ratio / (g * eps), 1.0 / (1.0 - spec.d));
}

int default_truncation(const SfiegarchSpec& spec) {
  const double b = truncation_bound(spec, 1e-4);
  return static_cast<int>(std::clamp(b, 5000.0, 1e6));
}

Eigen::VectorXd inverse_lambda(const SfiegarchSpec& spec, int m) {
  if (!(spec.d > -1.0 && spec.d < 0.5)) throw InvalidArgument("inverse_lambda: requires -1 < d < 0.5");
  const Poly a = spec.alpha_poly();
  check_denominator(a, "alpha(z)");
  Eigen::VectorXd ratio = series_divide(spec.beta_poly(), a, m);
  return series_multiply(ratio, seasonal_pi(-spec.d, spec.s, m), m);
}

Eigen::VectorXd arma_psi_weights(const ArmaSpec& arma, int m) {
  const Poly phi = arma.ar_poly();
  check_denominator(phi, "AR polynomial");
  return series_divide(arma.ma_poly(), phi, m);
}

CoeffTable build_coeff_table(const SfiegarchSpec& spec, int m) {
  CoeffTable t;
  t.m = m;
  t.d = spec.d;
  t.s = spec.s;
  t.lambda = lambda_recurrence(spec, m);
  t.pi = seasonal_pi(spec.d, spec.s, m);
  t.f = series_divide(spec.alpha_poly(), spec.beta_poly(), m);
  t.tau = series_multiply(spec.beta_poly(), seasonal_pi(-spec.d, spec.s, m), m);
  try {
    t.lambda_inv = inverse_lambda(spec, m);
  } catch (const InvalidArgument&) {
    t.lambda_inv.resize(0);
  }
  return t;
}

}  // namespace sfg
