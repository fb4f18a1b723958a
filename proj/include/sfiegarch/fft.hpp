#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace sfg {

/// Full linear convolution (length a.size() + b.size() - 1) through zero-padded FFTs.
Eigen::VectorXd fft_convolve(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

/// Forward DFT sum_t x_t e^{-i 2 pi j t / n} for j = 0..n/2.
std::vector<std::complex<double>> dft(const Eigen::VectorXd& x);

}  // namespace sfg
