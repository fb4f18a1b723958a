#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sfiegarch/polynomial.hpp"

namespace sfg {

/// Innovation law of Z_t, normalized to mean 0 and variance 1.
struct InnovationDist {
  enum class Kind { gaussian, ged };
  Kind kind = Kind::gaussian;
  double nu = 2.0;  ///< GED tail thickness, nu > 1. Ignored for gaussian.

  static InnovationDist gaussian() { return {}; }
  static InnovationDist ged(double nu) { return {Kind::ged, nu}; }
  /// Tail parameter used by the moment formulas (2 for gaussian).
  double shape() const { return kind == Kind::gaussian ? 2.0 : nu; }
};

/// SFIEGARCH(p, d, q)_s parameters.
struct SfiegarchSpec {
  double omega = 0.0;
  double theta = 0.0;
  double gamma = 0.0;  ///< magnitude effect
  double d = 0.0;
  int s = 1;
  std::vector<double> alpha;  ///< alpha_1..alpha_p of alpha(z) = 1 - sum alpha_i z^i
  std::vector<double> beta;   ///< beta_1..beta_q of beta(z) = 1 - sum beta_j z^j
  InnovationDist innovation;

  int p() const { return static_cast<int>(alpha.size()); }
  int q() const { return static_cast<int>(beta.size()); }
  Poly alpha_poly() const { return lag_polynomial(alpha); }
  Poly beta_poly() const { return lag_polynomial(beta); }
};

/// Constrained ARMA mean equation phi(B)(r_t - mu) = varphi(B) X_t with sparse lags.
/// The moving-average polynomial is 1 + sum varphi_j z^j.
struct ArmaSpec {
  double mu = 0.0;
  std::map<int, double> ar;
  std::map<int, double> ma;

  int max_lag() const;
  Poly ar_poly() const;  ///< 1 - sum phi_k z^k
  Poly ma_poly() const;  ///< 1 + sum varphi_j z^j
};

struct ValidationReport {
  std::vector<std::string> violations;
  double beta_min_root = 0.0;   ///< smallest modulus among roots of beta(z)
  double alpha_min_root = 0.0;  ///< smallest modulus among roots of alpha(z)
  bool common_root = false;     ///< alpha and beta share a root; the ratio then cancels
  bool ok() const { return violations.empty(); }
  std::string message() const;
};

/// Tolerance on root moduli: a root is outside the closed disk when |z| > 1 + kRootTol.
inline constexpr double kRootTol = 1e-8;
/// Common roots are declared when the normalized resultant falls below this value.
inline constexpr double kResultantTol = 1e-10;

ValidationReport validate(const SfiegarchSpec& spec);

/// Throws InvalidArgument with the report text if the spec is not valid.
/// With allow_common_root, a shared alpha/beta root is tolerated: coefficient series are still well defined.
void require_valid(const SfiegarchSpec& spec, bool allow_common_root = false, bool allow_degenerate_g = false);

enum class ModelClass { sfiegarch, fiegarch, egarch };
ModelClass special_case_of(const SfiegarchSpec& spec);
std::string to_string(ModelClass c);

/// Model file: volatility spec plus optional mean equation.
struct ModelFile {
  SfiegarchSpec spec;
  std::optional<ArmaSpec> arma;
};

std::string to_json(const ModelFile& m);
ModelFile model_from_json(const std::string& text);

}  // namespace sfg
