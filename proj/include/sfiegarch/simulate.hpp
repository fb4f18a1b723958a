#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "sfiegarch/model.hpp"

namespace sfg {

struct SimPath {
  Eigen::VectorXd x;          ///< X_t = sigma_t Z_t
  Eigen::VectorXd sigma2;     ///< sigma_t^2
  Eigen::VectorXd z;          ///< Z_t
  Eigen::VectorXd ln_sigma2;  ///< ln sigma_t^2
  int burn_in = 0;
  int m_trunc = 0;
  std::uint64_t seed = 0;
};

struct SimOptions {
  int burn_in = -1;  ///< negative: equal to m_trunc
  int m_trunc = -1;  ///< negative: default_truncation(spec)
  std::uint64_t seed = 0;
  bool skip_validation = false;  ///< allow theta = gamma = 0 for degenerate tests
};

SimPath simulate_sfiegarch(const SfiegarchSpec& spec, int n, const SimOptions& opt);

/// r_t = mu + sum phi_k (r_{t-k} - mu) + X_t + sum varphi_j X_{t-j}, presample r = mu and X = 0.
Eigen::VectorXd simulate_returns(const ArmaSpec& arma, const Eigen::VectorXd& x);

}  // namespace sfg
