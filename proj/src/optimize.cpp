#include "sfiegarch/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace sfg {

namespace {

double safe(double v) { return std::isfinite(v) ? v : std::numeric_limits<double>::infinity(); }

}  // namespace

OptimResult nelder_mead(const Objective& f, const Eigen::VectorXd& x0, const OptimOptions& opt) {
  const Eigen::Index n = x0.size();
  std::vector<Eigen::VectorXd> pts(n + 1, x0);
  std::vector<double> val(n + 1);
  OptimResult res;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double h = opt.initial_step * std::max(1.0, std::abs(x0(i)));
    pts[i + 1](i) += h;
  }
  for (Eigen::Index i = 0; i <= n; ++i) val[i] = safe(f(pts[i]));
  res.evaluations = static_cast<int>(n + 1);
  std::vector<Eigen::Index> idx(n + 1);

  for (int it = 0; it < opt.max_iter; ++it) {
    res.iterations = it + 1;
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return val[a] < val[b]; });
    const Eigen::Index best = idx.front(), worst = idx.back(), second = idx[n - 1];
    double spread = std::abs(val[worst] - val[best]);
    double size = 0.0;
    for (Eigen::Index i = 0; i <= n; ++i) size = std::max(size, (pts[i] - pts[best]).cwiseAbs().maxCoeff());
    if (std::isfinite(val[worst]) && spread <= opt.tol * (1.0 + std::abs(val[best])) && size < 1e-6) {
      res.converged = true;
      break;
    }
    Eigen::VectorXd c = Eigen::VectorXd::Zero(n);
    for (Eigen::Index i = 0; i <= n; ++i)
      if (i != worst) c += pts[i];
    c /= static_cast<double>(n);

    Eigen::VectorXd xr = c + (c - pts[worst]);
    double fr = safe(f(xr));
    ++res.evaluations;
    if (fr < val[best]) {
      Eigen::VectorXd xe = c + 2.0 * (c - pts[worst]);
      double fe = safe(f(xe));
      ++res.evaluations;
      if (fe < fr) {
        pts[worst] = xe;
        val[worst] = fe;
      } else {
        pts[worst] = xr;
        val[worst] = fr;
      }
      continue;
    }
    if (fr < val[second]) {
      pts[worst] = xr;
      val[worst] = fr;
      continue;
    }
    const bool outside = fr < val[worst];
    Eigen::VectorXd xc = outside ? Eigen::VectorXd(c + 0.5 * (xr - c)) : Eigen::VectorXd(c + 0.5 * (pts[worst] - c));
    double fc = safe(f(xc));
    ++res.evaluations;
    if (fc < (outside ? fr : val[worst])) {
      pts[worst] = xc;
      val[worst] = fc;
      continue;
    }
    for (Eigen::Index i = 0; i <= n; ++i) {
      if (i == best) continue;
      pts[i] = pts[best] + 0.5 * (pts[i] - pts[best]);
      val[i] = safe(f(pts[i]));
      ++res.evaluations;
    }
  }
  auto b = std::min_element(val.begin(), val.end()) - val.begin();
  res.x = pts[b];
  res.value = val[b];
  return res;
}

Eigen::VectorXd numeric_gradient(const Objective& f, const Eigen::VectorXd& x, double step) {
  Eigen::VectorXd g(x.size());
  Eigen::VectorXd y = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double h = step * std::max(1.0, std::abs(x(i)));
    y(i) = x(i) + h;
    const double fp = f(y);
    y(i) = x(i) - h;
    const double fm = f(y);
    y(i) = x(i);
    g(i) = (fp - fm) / (2.0 * h);
  }
  return g;
}

Eigen::MatrixXd numeric_jacobian(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& f,
                                 const Eigen::VectorXd& x, double step) {
  Eigen::MatrixXd j;
  Eigen::VectorXd y = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double h = step * std::max(1.0, std::abs(x(i)));
    y(i) = x(i) + h;
    Eigen::VectorXd fp = f(y);
    y(i) = x(i) - h;
    Eigen::VectorXd fm = f(y);
    y(i) = x(i);
    if (i == 0) j.resize(fp.size(), x.size());
    j.col(i) = (fp - fm) / (2.0 * h);
  }
  return j;
}

Eigen::MatrixXd numeric_hessian(const Objective& f, const Eigen::VectorXd& x, double step) {
  const Eigen::Index n = x.size();
  Eigen::MatrixXd h(n, n);
  Eigen::VectorXd y = x;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double hi = step * std::max(1.0, std::abs(x(i)));
    y(i) = x(i) + hi;
    Eigen::VectorXd gp = numeric_gradient(f, y, step * 0.5);
    y(i) = x(i) - hi;
    Eigen::VectorXd gm = numeric_gradient(f, y, step * 0.5);
    y(i) = x(i);
    h.col(i) = (gp - gm) / (2.0 * hi);
  }
  return 0.5 * (h + h.transpose());
}

OptimResult bfgs(const Objective& f, const Eigen::VectorXd& x0, const OptimOptions& opt) {
  const Eigen::Index n = x0.size();
  OptimResult res;
  Eigen::VectorXd x = x0;
  double fx = safe(f(x));
  Eigen::VectorXd g = numeric_gradient(f, x);
  res.evaluations = 1 + 2 * static_cast<int>(n);
  Eigen::MatrixXd Hinv = Eigen::MatrixXd::Identity(n, n);
  if (!std::isfinite(fx) || !g.allFinite()) {
    res.x = x;
    res.value = fx;
    return res;
  }
  for (int it = 0; it < opt.max_iter; ++it) {
    res.iterations = it + 1;
    Eigen::VectorXd p = -Hinv * g;
    if (g.dot(p) >= 0) {
      Hinv.setIdentity();
      p = -g;
    }
    double step = 1.0;
    double fn = fx;
    Eigen::VectorXd xn;
    bool accepted = false;
    for (int ls = 0; ls < 40; ++ls) {
      xn = x + step * p;
      fn = safe(f(xn));
      ++res.evaluations;
      if (fn <= fx + 1e-4 * step * g.dot(p)) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      res.converged = g.norm() < 1e-3 * (1.0 + std::abs(fx));
      break;
    }
    Eigen::VectorXd gn = numeric_gradient(f, xn);
    res.evaluations += 2 * static_cast<int>(n);
    Eigen::VectorXd sv = xn - x;
    Eigen::VectorXd yv = gn - g;
    const double decrease = fx - fn;
    x = xn;
    fx = fn;
    g = gn;
    const double sy = sv.dot(yv);
    if (sy > 1e-12) {
      const double rho = 1.0 / sy;
      Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
      Hinv = (I - rho * sv * yv.transpose()) * Hinv * (I - rho * yv * sv.transpose()) + rho * sv * sv.transpose();
    }
    if (decrease <= opt.tol * (1.0 + std::abs(fx)) && sv.cwiseAbs().maxCoeff() < 1e-6) {
      res.converged = true;
      break;
    }
  }
  res.x = x;
  res.value = fx;
  return res;
}

}  // namespace sfg
