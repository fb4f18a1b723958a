#include "sfiegarch/fft.hpp"

#include <unsupported/Eigen/FFT>

namespace sfg {

Eigen::VectorXd fft_convolve(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  if (a.size() == 0 || b.size() == 0) return {};
  const Eigen::Index out = a.size() + b.size() - 1;
  Eigen::Index n = 1;
  while (n < out) n <<= 1;
  std::vector<double> pa(n, 0.0), pb(n, 0.0);
  for (Eigen::Index i = 0; i < a.size(); ++i) pa[i] = a(i);
  for (Eigen::Index i = 0; i < b.size(); ++i) pb[i] = b(i);
  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> fa, fb;
  fft.fwd(fa, pa);
  fft.fwd(fb, pb);
  for (std::size_t i = 0; i < fa.size(); ++i) fa[i] *= fb[i];
  std::vector<double> c;
  fft.inv(c, fa);
  Eigen::VectorXd r(out);
  for (Eigen::Index i = 0; i < out; ++i) r(i) = c[i];
  return r;
}

std::vector<std::complex<double>> dft(const Eigen::VectorXd& x) {
  std::vector<double> v(x.data(), x.data() + x.size());
  Eigen::FFT<double> fft;
  fft.SetFlag(Eigen::FFT<double>::HalfSpectrum);
  std::vector<std::complex<double>> out;
  fft.fwd(out, v);
  return out;
}

}  // namespace sfg
