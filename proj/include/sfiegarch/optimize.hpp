#pragma once

#include <Eigen/Dense>
#include <functional>

namespace sfg {

/// Objective to minimize. Non-finite values mark rejected points.
using Objective = std::function<double(const Eigen::VectorXd&)>;

struct OptimResult {
  Eigen::VectorXd x;
  double value = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
};

struct OptimOptions {
  int max_iter = 2000;
  double tol = 1e-8;       ///< on objective decrease
  double initial_step = 0.1;
};

OptimResult nelder_mead(const Objective& f, const Eigen::VectorXd& x0, const OptimOptions& opt);
OptimResult bfgs(const Objective& f, const Eigen::VectorXd& x0, const OptimOptions& opt);

/// Central-difference gradient with steps h_i = step * max(1, |x_i|).
Eigen::VectorXd numeric_gradient(const Objective& f, const Eigen::VectorXd& x, double step = 1e-5);

/// Central-difference Jacobian of a vector-valued function (rows = outputs).
Eigen::MatrixXd numeric_jacobian(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& f,
                                 const Eigen::VectorXd& x, double step = 1e-5);

/// Symmetrized Hessian from central differences of the numeric gradient.
Eigen::MatrixXd numeric_hessian(const Objective& f, const Eigen::VectorXd& x, double step = 1e-4);

}  // namespace sfg
