#pragma once

#include <Eigen/Dense>
#include <vector>

#include "sfiegarch/acov.hpp"
#include "sfiegarch/model.hpp"

namespace sfg {

struct SpectralValue {
  double value = 0.0;
  bool pole = false;  ///< frequency is a seasonal pole 2 pi k / s with d > 0; value is +inf
};

SpectralValue spectral_ln_sigma2(const SfiegarchSpec& spec, double freq);
SpectralValue spectral_ln_x2(const SfiegarchSpec& spec, double freq);

/// Same as above with precomputed innovation moments.
SpectralValue spectral_ln_sigma2(const SecondOrder& so, double freq);
SpectralValue spectral_ln_x2(const SecondOrder& so, double freq);

/// Lambda(freq) = alpha/beta (e^{-i freq}) (1 - e^{-i s freq})^{-d}.
std::complex<double> transfer(const SfiegarchSpec& spec, double freq);

/// Seasonal poles 2 pi k / s in [0, pi].
std::vector<double> seasonal_poles(int s);

/// Integral over (-pi, pi] of the log-variance (x2 = false) or ln X^2 (x2 = true) spectral density.
double integrate_spectrum(const SecondOrder& so, bool x2);

struct PeriodogramPoint {
  double freq = 0.0;
  double power = 0.0;
};

/// I(lambda_j) = |sum_t x_t e^{-i lambda_j t}|^2 / (2 pi n), lambda_j = 2 pi j / n, j = 0..floor(n/2).
std::vector<PeriodogramPoint> periodogram(const Eigen::VectorXd& x);

}  // namespace sfg
