#include "sfiegarch/simulate.hpp"

#include "sfiegarch/coeffs.hpp"
#include "sfiegarch/error.hpp"
#include "sfiegarch/fft.hpp"
#include "sfiegarch/innovations.hpp"

namespace sfg {

SimPath simulate_sfiegarch(const SfiegarchSpec& spec, int n, const SimOptions& opt) {
  if (spec.d >= 0.5) throw InvalidArgument("simulate: process does not exist for d >= 0.5");
  if (n < 1) throw InvalidArgument("simulate: n must be >= 1");
  SfiegarchSpec work = spec;
  if (opt.skip_validation && spec.theta == 0.0 && spec.gamma == 0.0) work.theta = 1.0;
  require_valid(work, true);

  const int m = opt.m_trunc >= 0 ? opt.m_trunc : default_truncation(spec);
  const int burn = opt.burn_in >= 0 ? opt.burn_in : m;
  const Eigen::Index total = static_cast<Eigen::Index>(burn) + n;

  SimPath path;
  path.burn_in = burn;
  path.m_trunc = m;
  path.seed = opt.seed;

  // Shocks Z_{-m-1}, ..., Z_{total-1} so that every emitted point sees m+1 lags.
  const Eigen::Index pre = static_cast<Eigen::Index>(m) + 1;
  Eigen::VectorXd z = sample(spec.innovation, pre + total, opt.seed);
  const double em = abs_mean(spec.innovation);
  Eigen::VectorXd g(pre + total);
  for (Eigen::Index i = 0; i < g.size(); ++i) g(i) = news_impact(z(i), spec.theta, spec.gamma, em);

  Eigen::VectorXd lam = lambda_coefficients(work, m);
  Eigen::VectorXd y(n);  // ln sigma^2 - omega at emitted points
  const Eigen::Index first = pre + burn;  // index of first emitted Z in z
  const double work_direct = static_cast<double>(n) * (m + 1);
  if (spec.theta == 0.0 && spec.gamma == 0.0) {
    y.setZero();
  } else if (work_direct < 5e7) {
    for (int t = 0; t < n; ++t) {
      const Eigen::Index now = first + t;
      double acc = 0.0;
      for (int k = 0; k <= m; ++k) acc += lam(k) * g(now - 1 - k);
      y(t) = acc;
    }
  } else {
    // only the shocks that feed emitted points
    const Eigen::Index start = first - 1 - m;
    Eigen::VectorXd seg = g.segment(start, static_cast<Eigen::Index>(m) + n);
    Eigen::VectorXd c = fft_convolve(seg, lam);
    for (int t = 0; t < n; ++t) y(t) = c(m + t);
  }

  path.z = z.segment(first, n);
  path.ln_sigma2 = y.array() + spec.omega;
  path.sigma2 = path.ln_sigma2.array().exp();
  path.x = path.sigma2.array().sqrt() * path.z.array();
  return path;
}

Eigen::VectorXd simulate_returns(const ArmaSpec& arma, const Eigen::VectorXd& x) {
  const Eigen::Index n = x.size();
  Eigen::VectorXd r(n);
  for (Eigen::Index t = 0; t < n; ++t) {
    double v = arma.mu + x(t);
    for (auto& [k, phi] : arma.ar)
      if (t - k >= 0) v += phi * (r(t - k) - arma.mu);
    for (auto& [j, c] : arma.ma)
      if (t - j >= 0) v += c * x(t - j);
    r(t) = v;
  }
  return r;
}

}  // namespace sfg
