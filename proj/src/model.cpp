#include "sfiegarch/model.hpp"

#include <cmath>
#include <json.hpp>
#include <sstream>

#include "sfiegarch/error.hpp"

namespace sfg {

using nlohmann::ordered_json;

int ArmaSpec::max_lag() const {
  int m = 0;
  if (!ar.empty()) m = std::max(m, ar.rbegin()->first);
  if (!ma.empty()) m = std::max(m, ma.rbegin()->first);
  return m;
}

Poly ArmaSpec::ar_poly() const {
  std::vector<std::pair<int, double>> v(ar.begin(), ar.end());
  return lag_polynomial(v);
}

Poly ArmaSpec::ma_poly() const {
  std::vector<std::pair<int, double>> v;
  for (auto& [k, c] : ma) v.emplace_back(k, -c);
  return lag_polynomial(v);
}

std::string ValidationReport::message() const {
  std::string s;
  for (auto& v : violations) {
    if (!s.empty()) s += "; ";
    s += v;
  }
  return s;
}

ValidationReport validate(const SfiegarchSpec& spec) {
  ValidationReport r;
  auto finite = [](double v) { return std::isfinite(v); };
  bool all_finite = finite(spec.omega) && finite(spec.theta) && finite(spec.gamma) && finite(spec.d);
  for (double a : spec.alpha) all_finite = all_finite && finite(a);
  for (double b : spec.beta) all_finite = all_finite && finite(b);
  if (!all_finite) {
    r.violations.push_back("non-finite parameter");
    return r;
  }
  if (spec.s < 1) r.violations.push_back("season length s must be >= 1");
  if (spec.d >= 0.5) r.violations.push_back("existence requires d<0.5");
  if (spec.theta == 0.0 && spec.gamma == 0.0) r.violations.push_back("g degenerate: theta and gamma both zero");
  if (spec.innovation.kind == InnovationDist::Kind::ged &&
      !(std::isfinite(spec.innovation.nu) && spec.innovation.nu > 1.0))
    r.violations.push_back("GED requires nu>1");

  Poly a = spec.alpha_poly();
  Poly b = spec.beta_poly();
  r.beta_min_root = min_root_modulus(b);
  r.alpha_min_root = min_root_modulus(a);
  if (std::abs(r.beta_min_root - 1.0) <= kRootTol) {
    r.violations.push_back("beta root on unit circle");
  } else if (r.beta_min_root < 1.0) {
    std::ostringstream os;
    os << "beta root inside unit disk (min modulus " << r.beta_min_root << ")";
    r.violations.push_back(os.str());
  }
  if (trim(a).size() > 1 && trim(b).size() > 1 && normalized_resultant(a, b) < kResultantTol) {
    r.common_root = true;
    r.violations.push_back("alpha and beta share a common root");
  }
  return r;
}

void require_valid(const SfiegarchSpec& spec, bool allow_common_root, bool allow_degenerate_g) {
  auto r = validate(spec);
  if (allow_common_root && r.common_root) std::erase(r.violations, std::string("alpha and beta share a common root"));
  if (allow_degenerate_g) std::erase(r.violations, std::string("g degenerate: theta and gamma both zero"));
  if (!r.ok()) throw InvalidArgument("invalid spec: " + r.message());
}

ModelClass special_case_of(const SfiegarchSpec& spec) {
  if (spec.d == 0.0) return ModelClass::egarch;
  if (spec.s == 1) return ModelClass::fiegarch;
  return ModelClass::sfiegarch;
}

std::string to_string(ModelClass c) {
  switch (c) {
    case ModelClass::sfiegarch: return "sfiegarch";
    case ModelClass::fiegarch: return "fiegarch";
    case ModelClass::egarch: return "egarch";
  }
  return "";
}

namespace {

ordered_json lag_map(const std::map<int, double>& m) {
  ordered_json j = ordered_json::object();
  for (auto& [k, v] : m) j[std::to_string(k)] = v;
  return j;
}

std::map<int, double> parse_lag_map(const ordered_json& j) {
  std::map<int, double> m;
  if (j.is_null()) return m;
  if (!j.is_object()) throw InvalidArgument("lag map must be an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    int lag = 0;
    try {
      std::size_t pos = 0;
      lag = std::stoi(it.key(), &pos);
      if (pos != it.key().size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw InvalidArgument("lag key is not an integer: " + it.key());
    }
    if (lag < 1) throw InvalidArgument("lag must be positive: " + it.key());
    m[lag] = it.value().get<double>();
  }
  return m;
}

}  // namespace

std::string to_json(const ModelFile& m) {
  const auto& s = m.spec;
  ordered_json j;
  j["omega"] = s.omega;
  j["theta"] = s.theta;
  j["gamma"] = s.gamma;
  j["d"] = s.d;
  j["s"] = s.s;
  j["alpha"] = s.alpha;
  j["beta"] = s.beta;
  ordered_json inn;
  if (s.innovation.kind == InnovationDist::Kind::gaussian) {
    inn["kind"] = "gaussian";
  } else {
    inn["kind"] = "ged";
    inn["nu"] = s.innovation.nu;
  }
  j["innovation"] = inn;
  if (m.arma) {
    ordered_json a;
    a["mu"] = m.arma->mu;
    a["ar"] = lag_map(m.arma->ar);
    a["ma"] = lag_map(m.arma->ma);
    j["arma"] = a;
  }
  return j.dump(2) + "\n";
}

ModelFile model_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw InvalidArgument(std::string("model JSON parse error: ") + e.what());
  }
  ModelFile m;
  try {
    auto& s = m.spec;
    s.omega = j.value("omega", 0.0);
    s.theta = j.value("theta", 0.0);
    s.gamma = j.value("gamma", 0.0);
    s.d = j.value("d", 0.0);
    s.s = j.value("s", 1);
    s.alpha = j.value("alpha", std::vector<double>{});
    s.beta = j.value("beta", std::vector<double>{});
    if (j.contains("innovation")) {
      const auto& inn = j["innovation"];
      std::string kind = inn.value("kind", "gaussian");
      if (kind == "gaussian") {
        s.innovation = InnovationDist::gaussian();
      } else if (kind == "ged") {
        s.innovation = InnovationDist::ged(inn.at("nu").get<double>());
      } else {
        throw InvalidArgument("unknown innovation kind: " + kind);
      }
    }
    if (j.contains("arma") && !j["arma"].is_null()) {
      ArmaSpec a;
      a.mu = j["arma"].value("mu", 0.0);
      if (j["arma"].contains("ar")) a.ar = parse_lag_map(j["arma"]["ar"]);
      if (j["arma"].contains("ma")) a.ma = parse_lag_map(j["arma"]["ma"]);
      m.arma = a;
    }
  } catch (const InvalidArgument&) {
    throw;
  } catch (const std::exception& e) {
    throw InvalidArgument(std::string("model JSON field error: ") + e.what());
  }
  return m;
}

}  // namespace sfg
