#pragma once

#include <Eigen/Dense>

#include "sfiegarch/innovations.hpp"
#include "sfiegarch/model.hpp"

namespace sfg {

/// Limits of the long-lag constants.
struct TailParams {
  double sum_gamma_A = 0.0;        ///< sum_k gamma_A(k) = (alpha(1)/beta(1))^2
  double alpha1_over_beta1 = 0.0;  ///< alpha(1)/beta(1)
  double long_memory_const = 0.0;  ///< coefficient of h^{2d-1} in sum_r gamma_lnX2(sh+r), d > 0
  double short_side_const = 0.0;   ///< coefficient of h^{d-1} in sum_r gamma_lnX2(sh+r), d < 0
  double exponent = 0.0;           ///< dominant decay exponent
};

struct AcovReport {
  Eigen::VectorXd gamma_A;
  Eigen::VectorXd gamma_V;
  Eigen::VectorXd gamma_ln_sigma2;
  Eigen::VectorXd gamma_ln_x2;
  int max_lag = 0;
  TailParams tail;
};

/// Closed-form second-order quantities of one spec. Immutable after construction.
class SecondOrder {
 public:
  explicit SecondOrder(const SfiegarchSpec& spec);

  const SfiegarchSpec& spec() const { return spec_; }
  const InnovationMoments& moments() const { return mom_; }

  double gamma_arma(long h) const;
  double gamma_seasonal(long h) const;
  double gamma_ln_sigma2(long h) const;
  double gamma_ln_x2(long h) const;
  /// lambda_{d,k} for any k >= 0 (zero for k < 0).
  double lambda(long k) const;
  /// sum_k lambda_k^2.
  double sum_lambda_sq() const { return unit_var_; }
  TailParams tail() const;

 private:
  double unit_gamma_V(long j) const;  // gamma_V(s j) / sigma_g^2
  double pi_seasonal(long j) const;   // pi_{d, s j}
  double unit_ln_sigma2(long h) const;

  SfiegarchSpec spec_;
  InnovationMoments mom_;
  Eigen::VectorXd f_;
  Eigen::VectorXd gA_;
  Eigen::VectorXd gv_;   // unit gamma_V(s j) for j < anchor
  Eigen::VectorXd pi_;   // pi_{d,sj} for j < anchor
  Eigen::VectorXd lam_;  // lambda_k, k < lam_.size()
  double unit_var_ = 0.0;
};

double gamma_arma(const SfiegarchSpec& spec, long h);
double gamma_seasonal(const SfiegarchSpec& spec, long h);
double gamma_ln_sigma2(const SfiegarchSpec& spec, long h);
double gamma_ln_x2(const SfiegarchSpec& spec, long h);

AcovReport acov_report(const SfiegarchSpec& spec, int max_lag);

/// Log of prod_k E exp{b lambda_k g(Z)}, exact over the first terms plus a Gaussian tail correction.
double log_mgf_product(const SecondOrder& so, double b);

struct MomentResult {
  double sigma_r = 0.0;  ///< E sigma_t^r
  double abs_x_r = 0.0;  ///< E |X_t|^r
  bool finite = true;
};
MomentResult unconditional_moment(const SfiegarchSpec& spec, double r);

struct KurtosisAsymmetry {
  double kurtosis = 0.0;
  double asymmetry = 0.0;
};
KurtosisAsymmetry kurtosis_asymmetry(const SfiegarchSpec& spec);

}  // namespace sfg
