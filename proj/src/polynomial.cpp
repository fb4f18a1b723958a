#include "sfiegarch/polynomial.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>

#include "sfiegarch/error.hpp"

namespace sfg {

Poly lag_polynomial(std::span<const double> c) {
  Poly p = Poly::Zero(static_cast<Eigen::Index>(c.size()) + 1);
  p(0) = 1.0;
  for (std::size_t i = 0; i < c.size(); ++i) p(static_cast<Eigen::Index>(i) + 1) = -c[i];
  return p;
}

Poly lag_polynomial(std::span<const std::pair<int, double>> c) {
  int deg = 0;
  for (auto& [lag, v] : c) {
    if (lag < 1) throw InvalidArgument("lag must be positive");
    deg = std::max(deg, lag);
  }
  Poly p = Poly::Zero(deg + 1);
  p(0) = 1.0;
  for (auto& [lag, v] : c) p(lag) -= v;
  return p;
}

Poly trim(const Poly& p, double tol) {
  Eigen::Index n = p.size();
  while (n > 1 && std::abs(p(n - 1)) <= tol) --n;
  return p.head(std::max<Eigen::Index>(n, 1));
}

Eigen::VectorXcd roots(const Poly& p0) {
  Poly p = trim(p0);
  const Eigen::Index deg = p.size() - 1;
  if (deg < 1) return {};
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(deg, deg);
  for (Eigen::Index j = 0; j < deg; ++j) c(0, j) = -p(deg - 1 - j) / p(deg);
  for (Eigen::Index i = 1; i < deg; ++i) c(i, i - 1) = 1.0;
  Eigen::EigenSolver<Eigen::MatrixXd> es(c, false);
  return es.eigenvalues();
}

double min_root_modulus(const Poly& p) {
  auto r = roots(p);
  if (r.size() == 0) return std::numeric_limits<double>::infinity();
  return r.cwiseAbs().minCoeff();
}

double normalized_resultant(const Poly& a0, const Poly& b0) {
  auto ra = roots(a0);
  auto rb = roots(b0);
  double res = 1.0;
  for (Eigen::Index i = 0; i < ra.size(); ++i)
    for (Eigen::Index j = 0; j < rb.size(); ++j) res *= std::abs(ra(i) - rb(j));
  return res;
}

std::complex<double> evaluate(const Poly& p, std::complex<double> z) {
  std::complex<double> acc = 0.0;
  for (Eigen::Index i = p.size() - 1; i >= 0; --i) acc = acc * z + p(i);
  return acc;
}

Eigen::VectorXd series_divide(const Poly& num, const Poly& den, int m) {
  if (den.size() == 0 || den(0) == 0.0) throw InvalidArgument("series_divide: den(0) = 0");
  Eigen::VectorXd f = Eigen::VectorXd::Zero(m + 1);
  const Eigen::Index q = den.size() - 1;
  for (int k = 0; k <= m; ++k) {
    double acc = k < num.size() ? num(k) : 0.0;
    const Eigen::Index jmax = std::min<Eigen::Index>(k, q);
    for (Eigen::Index j = 1; j <= jmax; ++j) acc -= den(j) * f(k - j);
    f(k) = acc / den(0);
  }
  return f;
}

Eigen::VectorXd series_multiply(const Eigen::VectorXd& a, const Eigen::VectorXd& b, int m) {
  Eigen::VectorXd c = Eigen::VectorXd::Zero(m + 1);
  for (Eigen::Index i = 0; i < a.size() && i <= m; ++i) {
    if (a(i) == 0.0) continue;
    const Eigen::Index jmax = std::min<Eigen::Index>(b.size() - 1, m - i);
    for (Eigen::Index j = 0; j <= jmax; ++j) c(i + j) += a(i) * b(j);
  }
  return c;
}

}  // namespace sfg
