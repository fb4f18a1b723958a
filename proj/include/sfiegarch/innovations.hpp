#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>

#include "sfiegarch/model.hpp"

namespace sfg {

/// Innovation-level moments consumed by the second-order and forecast formulas.
struct InnovationMoments {
  double abs_mean = 0.0;    ///< E|Z|
  double sign_cross = 0.0;  ///< E(Z|Z|)
  double sigma_g_sq = 0.0;  ///< Var g(Z)
  double c1 = 0.0;          ///< Cov(g(Z), ln Z^2)
  double ln_sq_mean = 0.0;  ///< E ln Z^2
  double ln_sq_var = 0.0;   ///< Var ln Z^2
  double z4 = 0.0;          ///< E Z^4
  double z3 = 0.0;          ///< E Z^3
};

/// Scale of the unit-variance GED: [2^{-2/nu} Gamma(1/nu)/Gamma(3/nu)]^{1/2}.
double ged_scale(double nu);

double density(const InnovationDist& dist, double z);
double log_density(const InnovationDist& dist, double z);
double cdf(const InnovationDist& dist, double z);

/// E|Z|^r for r > -1.
double abs_moment(const InnovationDist& dist, double r);
double abs_mean(const InnovationDist& dist);

/// g(z) = theta z + gamma (|z| - abs_mean).
inline double news_impact(double z, double theta, double gamma, double abs_mean) {
  return theta * z + gamma * (std::abs(z) - abs_mean);
}

/// theta^2 + gamma^2 - (gamma E|Z|)^2 + 2 theta gamma E(Z|Z|).
double sigma_g_sq(const InnovationDist& dist, double theta, double gamma);

/// E exp{b g(Z)}. GED uses the power series, with quadrature when it fails to settle.
double g_mgf(const InnovationDist& dist, double b, double theta, double gamma);

/// E exp{b g(Z)} by quadrature only.
double g_mgf_quadrature(const InnovationDist& dist, double b, double theta, double gamma);

struct LnSqMoments {
  double mean = 0.0;
  double var = 0.0;
  double c1 = 0.0;
};
LnSqMoments ln_sq_moments(const InnovationDist& dist, double theta, double gamma);

InnovationMoments innovation_moments(const InnovationDist& dist, double theta, double gamma);

/// n i.i.d. unit-variance draws. GED draws use |Z| = scale (2W)^{1/nu}, W ~ Gamma(1/nu, 1).
Eigen::VectorXd sample(const InnovationDist& dist, Eigen::Index n, std::uint64_t seed);

/// Integral of f over the real line, split at 0, absolute tolerance 1e-10.
double integrate_real_line(const std::function<double(double)>& f);

/// Integral of f over (0, inf).
double integrate_half_line(const std::function<double(double)>& f);

}  // namespace sfg
