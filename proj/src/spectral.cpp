#include "sfiegarch/spectral.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <limits>

#include "sfiegarch/error.hpp"
#include "sfiegarch/fft.hpp"

namespace sfg {

namespace {

constexpr double kPi = boost::math::constants::pi<double>();

}  // namespace

namespace {

// 1 - e^{-iy} = 2 sin(y/2) (sin(y/2) + i cos(y/2)), with y = s freq taken modulo 2 pi by the caller
std::complex<double> one_minus_unit(double y) {
  const double h = 0.5 * y;
  return 2.0 * std::sin(h) * std::complex<double>(std::sin(h), std::cos(h));
}

double reduce(double y) { return std::remainder(y, 2.0 * kPi); }

SpectralValue ln_sigma2_at(const SecondOrder& so, double freq, double y) {
  const auto& spec = so.spec();
  if (spec.d > 0.0 && y == 0.0) return {std::numeric_limits<double>::infinity(), true};
  const std::complex<double> w = std::polar(1.0, -freq);
  const double arma = std::norm(evaluate(spec.alpha_poly(), w) / evaluate(spec.beta_poly(), w));
  const double frac = spec.d == 0.0 ? 1.0 : std::pow(2.0 * std::abs(std::sin(0.5 * y)), -2.0 * spec.d);
  return {so.moments().sigma_g_sq / (2.0 * kPi) * arma * frac, false};
}

SpectralValue ln_x2_at(const SecondOrder& so, double freq, double y) {
  auto base = ln_sigma2_at(so, freq, y);
  if (base.pole) return base;
  const auto& spec = so.spec();
  const auto& m = so.moments();
  const std::complex<double> w = std::polar(1.0, -freq);
  std::complex<double> lam = evaluate(spec.alpha_poly(), w) / evaluate(spec.beta_poly(), w);
  if (spec.d != 0.0) lam *= std::pow(one_minus_unit(y), -spec.d);
  const std::complex<double> cross = w * lam;
  return {base.value + m.c1 / kPi * cross.real() + m.ln_sq_var / (2.0 * kPi), false};
}

}  // namespace

std::complex<double> transfer(const SfiegarchSpec& spec, double freq) {
  const std::complex<double> w = std::polar(1.0, -freq);
  std::complex<double> lam = evaluate(spec.alpha_poly(), w) / evaluate(spec.beta_poly(), w);
  if (spec.d != 0.0) lam *= std::pow(one_minus_unit(reduce(spec.s * freq)), -spec.d);
  return lam;
}

SpectralValue spectral_ln_sigma2(const SecondOrder& so, double freq) {
  return ln_sigma2_at(so, freq, reduce(so.spec().s * freq));
}

SpectralValue spectral_ln_x2(const SecondOrder& so, double freq) {
  return ln_x2_at(so, freq, reduce(so.spec().s * freq));
}

SpectralValue spectral_ln_sigma2(const SfiegarchSpec& spec, double freq) {
  return spectral_ln_sigma2(SecondOrder(spec), freq);
}

SpectralValue spectral_ln_x2(const SfiegarchSpec& spec, double freq) {
  return spectral_ln_x2(SecondOrder(spec), freq);
}

std::vector<double> seasonal_poles(int s) {
  std::vector<double> p;
  for (int k = 0; 2 * k <= s; ++k) p.push_back(2.0 * kPi * k / s);
  return p;
}

double integrate_spectrum(const SecondOrder& so, bool x2) {
  const int s = so.spec().s;
  std::vector<double> knots = seasonal_poles(s);
  const bool pi_is_pole = knots.back() == kPi || s % 2 == 0;
  if (knots.back() < kPi) knots.push_back(kPi);
  boost::math::quadrature::tanh_sinh<double> ts(15);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const double a = knots[i];
    const double b = knots[i + 1];
    const bool b_pole = i + 2 < knots.size() || pi_is_pole;
    // xc = a - x (negative) on the left half, b - x on the right; s x is congruent to -s xc modulo 2 pi at a pole
    auto f = [&](double x, double xc) {
      const double y = (xc < 0.0 || b_pole) ? -s * xc : reduce(s * x);
      auto v = x2 ? ln_x2_at(so, x, y) : ln_sigma2_at(so, x, y);
      return v.pole ? 0.0 : v.value;
    };
    total += ts.integrate(f, a, b, 1e-13);
  }
  return 2.0 * total;
}

std::vector<PeriodogramPoint> periodogram(const Eigen::VectorXd& x) {
  const Eigen::Index n = x.size();
  if (n < 2) throw InvalidArgument("periodogram: need at least 2 observations");
  auto c = dft(x);
  std::vector<PeriodogramPoint> out;
  for (Eigen::Index j = 0; j <= n / 2; ++j)
    out.push_back({2.0 * kPi * j / n, std::norm(c[j]) / (2.0 * kPi * n)});
  return out;
}

}  // namespace sfg
