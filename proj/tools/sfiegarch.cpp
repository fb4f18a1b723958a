#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "sfiegarch/sfiegarch.hpp"

using nlohmann::ordered_json;
using namespace sfg;

namespace {

struct Globals {
  std::uint64_t seed = 0;
  std::string config;
  std::string out = ".";
  int threads = 1;
};

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// NaN and infinities are not JSON; they are written as null
ordered_json jnum(double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); }

ordered_json jvec(const Eigen::VectorXd& v) {
  ordered_json a = ordered_json::array();
  for (double x : v) a.push_back(jnum(x));
  return a;
}

std::filesystem::path out_path(const Globals& g, const std::string& name) {
  std::filesystem::create_directories(g.out);
  return std::filesystem::path(g.out) / name;
}

void write_text(const Globals& g, const std::string& name, const std::string& text) {
  std::ofstream o(out_path(g, name), std::ios::binary);
  if (!o) throw InvalidArgument("cannot write " + out_path(g, name).string());
  o << text;
}

void write_json(const Globals& g, const std::string& name, const ordered_json& j) {
  write_text(g, name, j.dump(2) + "\n");
}

ordered_json load_config(const Globals& g) {
  if (g.config.empty()) return ordered_json::object();
  try {
    return ordered_json::parse(read_file(g.config));
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(g.config + ": " + e.what());
  }
}

ModelFile load_model(const Globals& g) {
  if (g.config.empty()) throw InvalidArgument("--config <model.json> is required");
  return model_from_json(read_file(g.config));
}

// flag value wins over the config section; section keys use underscores
template <class T>
void from_config(const CLI::App* app, const ordered_json& cfg, const std::string& section, const std::string& flag,
                 T& value) {
  if (app->count(flag) > 0) return;
  if (!cfg.contains(section)) return;
  std::string key = flag.substr(2);
  std::replace(key.begin(), key.end(), '-', '_');
  const auto& sec = cfg[section];
  if (!sec.contains(key)) return;
  try {
    value = sec[key].get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument("config " + section + "." + key + ": " + e.what());
  }
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t pos = 0;
      v.push_back(std::stod(item, &pos));
      if (pos != item.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw InvalidArgument("not a number: " + item);
    }
  }
  return v;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (double v : parse_list(text)) {
    if (v != std::floor(v)) throw InvalidArgument("not an integer: " + num(v));
    out.push_back(static_cast<int>(v));
  }
  return out;
}

// index-ordered parallel map: each slot is written by exactly one worker
template <class F>
void parallel_for(int n, int threads, F f) {
  threads = std::clamp(threads, 1, std::max(1, n));
  if (threads == 1) {
    for (int i = 0; i < n; ++i) f(i);
    return;
  }
  std::vector<std::thread> pool;
  for (int w = 0; w < threads; ++w)
    pool.emplace_back([&, w] {
      for (int i = w; i < n; i += threads) f(i);
    });
  for (auto& t : pool) t.join();
}

ordered_json model_json(const SfiegarchSpec& spec, const std::optional<ArmaSpec>& arma) {
  return ordered_json::parse(to_json(ModelFile{spec, arma}));
}

// ---------------------------------------------------------------- sim

struct SimArgs {
  int n = 1000;
  int burn_in = -1;
  int m_trunc = -1;
};

void run_sim(const Globals& g, const CLI::App* app, SimArgs a) {
  auto cfg = load_config(g);
  from_config(app, cfg, "sim", "--n", a.n);
  from_config(app, cfg, "sim", "--burn-in", a.burn_in);
  from_config(app, cfg, "sim", "--m-trunc", a.m_trunc);
  if (a.n < 1) throw InvalidArgument("--n must be >= 1");
  auto model = load_model(g);
  auto path = simulate_sfiegarch(model.spec, a.n, SimOptions{a.burn_in, a.m_trunc, g.seed, false});
  std::string csv = "t,x,sigma2,z\n";
  for (int t = 0; t < a.n; ++t)
    csv += std::to_string(t + 1) + "," + num(path.x(t)) + "," + num(path.sigma2(t)) + "," + num(path.z(t)) + "\n";
  write_text(g, "sim.csv", csv);
  if (model.arma) {
    auto r = simulate_returns(*model.arma, path.x);
    std::string rc = "t,r\n";
    for (int t = 0; t < a.n; ++t) rc += std::to_string(t + 1) + "," + num(r(t)) + "\n";
    write_text(g, "returns.csv", rc);
  }
  ordered_json meta;
  meta["n"] = a.n;
  meta["burn_in"] = path.burn_in;
  meta["m_trunc"] = path.m_trunc;
  meta["seed"] = g.seed;
  meta["class"] = to_string(special_case_of(model.spec));
  meta["model"] = model_json(model.spec, model.arma);
  write_json(g, "sim.json", meta);
}

// ---------------------------------------------------------------- ingest

struct IngestArgs {
  std::string prices;
  std::string frequency;
  int block = 1;
  std::string partial = "drop";
  bool respect_days = false;
  std::string day_boundaries;
};

void run_ingest(const Globals& g, const CLI::App* app, IngestArgs a) {
  auto cfg = load_config(g);
  from_config(app, cfg, "ingest", "--block", a.block);
  from_config(app, cfg, "ingest", "--partial", a.partial);
  from_config(app, cfg, "ingest", "--respect-days", a.respect_days);
  from_config(app, cfg, "ingest", "--frequency", a.frequency);
  if (a.partial != "drop" && a.partial != "keep") throw InvalidArgument("--partial must be drop or keep");
  auto ds = ingest_prices(a.prices, a.frequency);
  if (!a.day_boundaries.empty()) {
    std::vector<std::int64_t> b;
    std::stringstream ss(read_file(a.day_boundaries));
    std::string line;
    while (std::getline(ss, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line == "timestamp") continue;
      b.push_back(parse_rfc3339(line));
    }
    ds.day_counts = day_counts_from_boundaries(ds.epoch, b);
  } else {
    ds.day_counts = day_counts_by_local_date(ds.timestamps);
  }
  const Dataset agg =
      aggregate_returns(ds, a.block, a.partial == "keep" ? PartialBlock::keep : PartialBlock::drop, a.respect_days);
  std::string csv = "timestamp,r\n";
  for (Eigen::Index t = 0; t < agg.returns.size(); ++t) csv += agg.timestamps[t] + "," + num(agg.returns(t)) + "\n";
  write_text(g, "returns.csv", csv);
  std::string dc = "day,count\n";
  for (std::size_t i = 0; i < agg.day_counts.size(); ++i)
    dc += std::to_string(i + 1) + "," + std::to_string(agg.day_counts[i]) + "\n";
  write_text(g, "day_counts.csv", dc);
  ordered_json j;
  j["prices"] = ds.prices.size();
  j["returns_raw"] = ds.returns.size();
  j["returns"] = agg.returns.size();
  j["block"] = a.block;
  j["days"] = agg.day_counts.size();
  if (agg.returns.size() >= 4) {
    auto st = descriptive_stats(agg.returns);
    ordered_json d;
    d["mean"] = jnum(st.mean);
    d["sd"] = jnum(st.sd);
    d["kurtosis"] = st.moments_defined ? jnum(st.kurtosis) : ordered_json(nullptr);
    d["skewness"] = st.moments_defined ? jnum(st.skewness) : ordered_json(nullptr);
    j["stats"] = d;
  }
  write_json(g, "ingest.json", j);
}

// ---------------------------------------------------------------- fit

struct FitArgs {
  std::string data;
  std::string column = "";
  int s = 1;
  int p = 0;
  int q = 0;
  std::string fix_d;
  std::string ar;
  std::string ma;
  bool mean = false;
  bool no_eliminate = false;
  double level = 0.05;
  double abs_mean_z = std::sqrt(2.0 / M_PI);
  int max_iter = 2000;
};

ordered_json fit_json(const FitResult& f, long n) {
  ordered_json j;
  j["model"] = model_json(f.spec_hat, f.arma_hat);
  j["class"] = to_string(special_case_of(f.spec_hat));
  j["n"] = n;
  j["loglik"] = jnum(f.loglik);
  j["k"] = f.k;
  j["aic"] = jnum(f.aic);
  j["bic"] = jnum(f.bic);
  j["hqc"] = jnum(f.hqc);
  j["abs_mean_z"] = f.abs_mean_z;
  j["converged"] = f.converged;
  j["hessian_singular"] = f.hessian_singular;
  j["iterations"] = f.iterations;
  ordered_json params = ordered_json::array();
  for (std::size_t i = 0; i < f.names.size(); ++i) {
    ordered_json p;
    p["name"] = f.names[i];
    p["estimate"] = jnum(f.estimates(i));
    p["se"] = jnum(f.se(i));
    params.push_back(p);
  }
  j["parameters"] = params;
  ordered_json cov = ordered_json::array();
  for (Eigen::Index r = 0; r < f.cov_robust.rows(); ++r) cov.push_back(jvec(f.cov_robust.row(r).transpose()));
  j["cov_robust"] = cov;
  if (f.arma_fit) {
    const auto& a = *f.arma_fit;
    ordered_json m = ordered_json::array();
    for (std::size_t i = 0; i < a.names.size(); ++i) {
      ordered_json p;
      p["name"] = a.names[i];
      p["estimate"] = jnum(a.estimates(i));
      p["se"] = jnum(a.se(i));
      p["pvalue"] = jnum(a.pvalues(i));
      m.push_back(p);
    }
    j["mean_equation"] = m;
    j["removed"] = a.removed;
  }
  return j;
}

void run_fit(const Globals& g, const CLI::App* app, FitArgs a) {
  auto cfg = load_config(g);
  from_config(app, cfg, "fit", "--column", a.column);
  from_config(app, cfg, "fit", "--s", a.s);
  from_config(app, cfg, "fit", "--p", a.p);
  from_config(app, cfg, "fit", "--q", a.q);
  from_config(app, cfg, "fit", "--fix-d", a.fix_d);
  from_config(app, cfg, "fit", "--ar", a.ar);
  from_config(app, cfg, "fit", "--ma", a.ma);
  from_config(app, cfg, "fit", "--mean", a.mean);
  from_config(app, cfg, "fit", "--no-eliminate", a.no_eliminate);
  from_config(app, cfg, "fit", "--level", a.level);
  from_config(app, cfg, "fit", "--abs-mean-z", a.abs_mean_z);
  from_config(app, cfg, "fit", "--max-iter", a.max_iter);
  Eigen::VectorXd r = read_series_csv(a.data, a.column);
  VolatilityConfig vc;
  vc.s = a.s;
  vc.p = a.p;
  vc.q = a.q;
  vc.abs_mean_z = a.abs_mean_z;
  vc.max_iter = a.max_iter;
  if (!a.fix_d.empty()) {
    auto d = parse_list(a.fix_d);
    if (d.size() != 1) throw InvalidArgument("--fix-d takes one value");
    vc.estimate_d = false;
    vc.fixed_d = d[0];
  }
  FitResult f;
  if (!a.ar.empty() || !a.ma.empty() || a.mean) {
    ArmaLagSets lags{parse_int_list(a.ar), parse_int_list(a.ma), a.mean};
    ArmaFitOptions ao;
    ao.eliminate = !a.no_eliminate;
    ao.level = a.level;
    f = fit_two_step(r, lags, vc, ao);
  } else {
    f = fit_sfiegarch(r, vc);
    f.arma_hat = ArmaSpec{};
  }
  write_json(g, "fit.json", fit_json(f, static_cast<long>(r.size())));
  std::string csv = "t,r,x,z,sigma2\n";
  for (Eigen::Index t = 0; t < r.size(); ++t)
    csv += std::to_string(t + 1) + "," + num(r(t)) + "," + num(f.residuals_x(t)) + "," + num(f.residuals_z(t)) + "," +
           num(f.sigma2_fitted(t)) + "\n";
  write_text(g, "residuals.csv", csv);
}

// ---------------------------------------------------------------- forecast

struct ForecastArgs {
  std::string fit;
  std::string data;
  std::string column;
  int h = 10;
  std::string mode = "sample";
  std::string day_counts;
  int days = 0;
};

void run_forecast(const Globals& g, const CLI::App* app, ForecastArgs a) {
  auto cfg = load_config(g);
  from_config(app, cfg, "forecast", "--horizon", a.h);
  from_config(app, cfg, "forecast", "--mode", a.mode);
  from_config(app, cfg, "forecast", "--column", a.column);
  if (a.mode != "sample" && a.mode != "analytic") throw InvalidArgument("--mode must be sample or analytic");
  ModelFile model;
  double abs_mean_z = std::sqrt(2.0 / M_PI);
  if (!a.fit.empty()) {
    ordered_json fj;
    try {
      fj = ordered_json::parse(read_file(a.fit));
    } catch (const nlohmann::json::exception& e) {
      throw InvalidArgument(a.fit + ": " + e.what());
    }
    if (!fj.contains("model")) throw InvalidArgument(a.fit + ": missing model");
    model = model_from_json(fj["model"].dump());
    abs_mean_z = fj.value("abs_mean_z", abs_mean_z);
  } else {
    model = load_model(g);
  }
  require_valid(model.spec, true);
  Eigen::VectorXd r = read_series_csv(a.data, a.column);
  auto hist = conditioning_history(model.spec, model.arma.value_or(ArmaSpec{}), r, abs_mean_z);
  ForecastOptions fo;
  fo.mode = a.mode == "analytic" ? ExpectationMode::analytic : ExpectationMode::sample;
  Forecaster fc(hist, a.h, fo);
  std::string csv = "h,r_hat,r2_hat,sigma2_hat,sigma2_check,sigma2_tilde,mse_sigma2,mse_ln\n";
  for (const auto& f : fc.sets())
    csv += std::to_string(f.horizon) + "," + num(f.r_hat) + "," + num(f.r2_hat) + "," + num(f.sigma2_hat) + "," +
           num(f.sigma2_check) + "," + num(f.sigma2_tilde) + "," + num(f.mse_sigma2) + "," + num(f.mse_ln) + "\n";
  write_text(g, "forecast.csv", csv);
  ordered_json j;
  j["n"] = r.size();
  j["mode"] = a.mode;
  j["sigma_g_sq_hat"] = jnum(fc.sets().front().sigma_g_sq_hat);
  ordered_json mx = ordered_json::array();
  for (const auto& f : fc.sets()) mx.push_back(jnum(f.mse_x2));
  j["mse_x2"] = mx;
  if (!a.day_counts.empty()) {
    auto dc = parse_int_list(a.day_counts);
    const int days = a.days > 0 ? a.days : static_cast<int>(dc.size());
    auto agg = aggregate_horizon(fc.sets(), fc.psi(), dc, days);
    ordered_json ag;
    ag["days"] = days;
    ag["window"] = agg.window;
    ag["r_sum"] = jnum(agg.r_sum);
    ag["sigma2_sum"] = jnum(agg.sigma2_sum);
    j["aggregate"] = ag;
  }
  write_json(g, "forecast.json", j);
}

// ---------------------------------------------------------------- acov

struct AcovArgs {
  int max_lag = 100;
};

void run_acov(const Globals& g, const CLI::App* app, AcovArgs a) {
  auto cfg = load_config(g);
  from_config(app, cfg, "acov", "--max-lag", a.max_lag);
  if (a.max_lag < 0) throw InvalidArgument("--max-lag must be >= 0");
  auto model = load_model(g);
  SecondOrder so(model.spec);
  const int L = a.max_lag;
  std::vector<std::array<double, 4>> rows(L + 1);
  parallel_for(L + 1, g.threads, [&](int h) {
    rows[h] = {so.gamma_arma(h), so.gamma_seasonal(h), so.gamma_ln_sigma2(h), so.gamma_ln_x2(h)};
  });
  std::string csv = "lag,gamma_A,gamma_V,gamma_ln_sigma2,gamma_ln_x2\n";
  for (int h = 0; h <= L; ++h)
    csv += std::to_string(h) + "," + num(rows[h][0]) + "," + num(rows[h][1]) + "," + num(rows[h][2]) + "," +
           num(rows[h][3]) + "\n";
  write_text(g, "acov.csv", csv);
  ordered_json j;
  j["class"] = to_string(special_case_of(model.spec));
  const auto& m = so.moments();
  j["sigma_g_sq"] = m.sigma_g_sq;
  j["abs_mean"] = m.abs_mean;
  j["ln_z2_mean"] = m.ln_sq_mean;
  j["ln_z2_var"] = m.ln_sq_var;
  j["c1"] = m.c1;
  j["sum_lambda_sq"] = so.sum_lambda_sq();
  auto t = so.tail();
  ordered_json tj;
  tj["sum_gamma_A"] = t.sum_gamma_A;
  tj["alpha1_over_beta1"] = t.alpha1_over_beta1;
  tj["long_memory_const"] = t.long_memory_const;
  tj["short_side_const"] = t.short_side_const;
  tj["exponent"] = t.exponent;
  j["tail"] = tj;
  auto m2 = unconditional_moment(model.spec, 2.0);
  j["E_x2"] = m2.finite ? jnum(m2.abs_x_r) : ordered_json(nullptr);
  try {
    auto ka = kurtosis_asymmetry(model.spec);
    j["kurtosis"] = jnum(ka.kurtosis);
    j["asymmetry"] = jnum(ka.asymmetry);
  } catch (const NumericFailure&) {
    j["kurtosis"] = nullptr;
    j["asymmetry"] = nullptr;
  }
  write_json(g, "acov.json", j);
}

// ---------------------------------------------------------------- spectrum

struct SpectrumArgs {
  int points = 512;
  std::string periodogram;
  std::string column;
};

void run_spectrum(const Globals& g, const CLI::App* app, SpectrumArgs a) {
  auto cfg = load_config(g);
  from_config(app, cfg, "spectrum", "--points", a.points);
  if (a.points < 2) throw InvalidArgument("--points must be >= 2");
  auto model = load_model(g);
  SecondOrder so(model.spec);
  std::vector<std::array<double, 3>> rows(a.points + 1);
  parallel_for(a.points + 1, g.threads, [&](int i) {
    const double f = M_PI * i / a.points;
    auto s1 = spectral_ln_sigma2(so, f);
    auto s2 = spectral_ln_x2(so, f);
    rows[i] = {f, s1.value, s2.pole ? std::numeric_limits<double>::infinity() : s2.value};
  });
  std::string csv = "freq,f_ln_sigma2,f_ln_x2,pole\n";
  for (const auto& r : rows) {
    const bool pole = std::isinf(r[1]);
    csv += num(r[0]) + "," + (pole ? "inf" : num(r[1])) + "," + (pole ? "inf" : num(r[2])) + "," + (pole ? "1" : "0") +
           "\n";
  }
  write_text(g, "spectrum.csv", csv);
  ordered_json j;
  j["integral_ln_sigma2"] = integrate_spectrum(so, false);
  j["gamma_ln_sigma2_0"] = so.gamma_ln_sigma2(0);
  j["integral_ln_x2"] = integrate_spectrum(so, true);
  j["gamma_ln_x2_0"] = so.gamma_ln_x2(0);
  j["poles"] = model.spec.d > 0.0 ? ordered_json(seasonal_poles(model.spec.s)) : ordered_json::array();
  write_json(g, "spectrum.json", j);
  if (!a.periodogram.empty()) {
    auto x = read_series_csv(a.periodogram, a.column);
    std::string pc = "freq,power\n";
    for (const auto& p : periodogram(x)) pc += num(p.freq) + "," + num(p.power) + "\n";
    write_text(g, "periodogram.csv", pc);
  }
}

// ---------------------------------------------------------------- diag

struct DiagArgs {
  std::string data;
  std::string x_column = "x";
  std::string sigma2_column = "sigma2";
  std::string lags = "1,5,10,15,20";
  int fitted = 0;
  std::string nu = "1.1,1.3,1.5,1.7,2,2.5,3";
};

void run_diag(const Globals& g, const CLI::App* app, DiagArgs a) {
  auto cfg = load_config(g);
  from_config(app, cfg, "diag", "--lags", a.lags);
  from_config(app, cfg, "diag", "--fitted", a.fitted);
  from_config(app, cfg, "diag", "--nu", a.nu);
  auto x = read_series_csv(a.data, a.x_column);
  auto lags = parse_int_list(a.lags);
  ordered_json j;
  auto port = [&](const Eigen::VectorXd& s, int fitted, const std::string& name) {
    std::string csv = "lag,df,bp,bp_pvalue,lb,lb_pvalue\n";
    ordered_json arr = ordered_json::array();
    for (const auto& r : portmanteau(s, lags, fitted)) {
      csv += std::to_string(r.lag) + "," + std::to_string(r.df) + "," + num(r.bp) + "," + num(r.bp_pvalue) + "," +
             num(r.lb) + "," + num(r.lb_pvalue) + "\n";
      ordered_json o;
      o["lag"] = r.lag;
      o["df"] = r.df;
      o["bp"] = jnum(r.bp);
      o["bp_pvalue"] = jnum(r.bp_pvalue);
      o["lb"] = jnum(r.lb);
      o["lb_pvalue"] = jnum(r.lb_pvalue);
      arr.push_back(o);
    }
    write_text(g, "portmanteau_" + name + ".csv", csv);
    return arr;
  };
  j["portmanteau_x"] = port(x, a.fitted, "x");
  auto cp = cumulative_periodogram(x);
  ordered_json c;
  c["stat"] = jnum(cp.stat);
  c["critical"] = jnum(cp.critical);
  c["reject"] = cp.reject;
  c["degenerate"] = cp.degenerate;
  j["cumulative_periodogram"] = c;
  if (x.size() >= 4) {
    auto st = descriptive_stats(x);
    j["kurtosis"] = st.moments_defined ? jnum(st.kurtosis) : ordered_json(nullptr);
    j["skewness"] = st.moments_defined ? jnum(st.skewness) : ordered_json(nullptr);
  }
  if (!a.sigma2_column.empty()) {
    auto s2 = read_series_csv(a.data, a.sigma2_column);
    if (s2.size() != x.size()) throw InvalidArgument("diag: column lengths differ");
    Eigen::VectorXd z2 = x.array().square() / s2.array();
    j["portmanteau_z2"] = port(z2, 0, "z2");
    auto grid = parse_list(a.nu);
    auto dt = density_transform_test(x, s2, grid);
    std::string csv = "nu,ks,pvalue\n";
    ordered_json arr = ordered_json::array();
    for (const auto& r : dt.rows) {
      csv += num(r.nu) + "," + num(r.stat) + "," + num(r.pvalue) + "\n";
      ordered_json o;
      o["nu"] = r.nu;
      o["ks"] = jnum(r.stat);
      o["pvalue"] = jnum(r.pvalue);
      arr.push_back(o);
    }
    write_text(g, "density_transform.csv", csv);
    j["density_transform"] = arr;
    j["density_transform_degenerate"] = dt.degenerate;
  }
  write_json(g, "diag.json", j);
}

// ---------------------------------------------------------------- evaluate

struct EvalArgs {
  std::string data;
  std::string actual = "actual";
  std::string predicted = "predicted";
  std::string benchmark;
  std::string returns;
  std::string mu;
  std::string sigma2;
  std::string nu = "2";
  long n_fit = 0;
  int hac_lags = 5;
  int h = 1;
  std::string intraday;
  std::string day_counts;
  int window = 1;
};

std::vector<int> read_day_counts(const std::string& path) {
  std::vector<int> out;
  for (double v : read_series_csv(path, "count")) out.push_back(static_cast<int>(v));
  return out;
}

void write_realized(const Globals& g, const EvalArgs& a) {
  auto rv = realized_volatility(read_series_csv(a.intraday, "r"), read_day_counts(a.day_counts));
  std::string csv = "day,count,r_day,v,v_window\n";
  const int n = static_cast<int>(rv.daily_vol.size());
  for (int t = 0; t < n; ++t)
    csv += std::to_string(t + 1) + "," + std::to_string(rv.counts[t]) + "," + num(rv.daily_returns(t)) + "," +
           num(rv.daily_vol(t)) + "," + (t + a.window <= n ? num(rv.window(t, a.window)) : std::string()) + "\n";
  write_text(g, "realized.csv", csv);
}

void run_evaluate(const Globals& g, const CLI::App* app, EvalArgs a) {
  auto cfg = load_config(g);
  from_config(app, cfg, "evaluate", "--n-fit", a.n_fit);
  from_config(app, cfg, "evaluate", "--hac-lags", a.hac_lags);
  from_config(app, cfg, "evaluate", "--horizon", a.h);
  from_config(app, cfg, "evaluate", "--nu", a.nu);
  from_config(app, cfg, "evaluate", "--window", a.window);
  if (!a.intraday.empty()) {
    if (a.day_counts.empty()) throw InvalidArgument("--intraday needs --day-counts");
    write_realized(g, a);
    if (a.data.empty()) return;
  }
  if (a.data.empty()) throw InvalidArgument("--data is required");
  auto y = read_series_csv(a.data, a.actual);
  auto p = read_series_csv(a.data, a.predicted);
  if (a.n_fit <= 0) throw InvalidArgument("--n-fit must be positive");
  ordered_json j;
  auto em = error_measures(y, p);
  j["mae"] = jnum(em.mae);
  j["mpe"] = em.mpe_defined ? jnum(em.mpe) : ordered_json(nullptr);
  j["mpe_skipped"] = em.mpe_skipped;
  j["max_ae"] = jnum(em.max_ae);
  Eigen::VectorXd bench = a.benchmark.empty() ? Eigen::VectorXd::Zero(y.size()) : read_series_csv(a.data, a.benchmark);
  Eigen::VectorXd d = (y - p).cwiseAbs() - (y - bench).cwiseAbs();
  if (d.size() >= 10) {
    auto dm = diebold_mariano(d, a.h);
    ordered_json o;
    o["stat"] = std::isfinite(dm.stat) ? ordered_json(dm.stat) : ordered_json(dm.stat > 0 ? "inf" : "-inf");
    o["pvalue"] = jnum(dm.pvalue);
    o["degenerate"] = dm.degenerate;
    j["diebold_mariano"] = o;
  }
  auto mz = mincer_zarnowitz(y, p, a.n_fit, a.hac_lags);
  ordered_json m;
  m["gamma0"] = jnum(mz.gamma0);
  m["gamma1"] = jnum(mz.gamma1);
  m["se0"] = jnum(mz.se0);
  m["se1"] = jnum(mz.se1);
  m["lambda_correction"] = jnum(mz.lambda_correction);
  m["wald"] = jnum(mz.wald);
  m["wald_pvalue"] = jnum(mz.wald_pvalue);
  j["mincer_zarnowitz"] = m;
  if (!a.returns.empty() && !a.sigma2.empty()) {
    auto r = read_series_csv(a.data, a.returns);
    auto s2 = read_series_csv(a.data, a.sigma2);
    Eigen::VectorXd mu = a.mu.empty() ? Eigen::VectorXd::Zero(r.size()) : read_series_csv(a.data, a.mu);
    ordered_json arr = ordered_json::array();
    std::string csv = "nu,S\n";
    for (double nu : parse_list(a.nu)) {
      auto dist = nu == 2.0 ? InnovationDist::gaussian() : InnovationDist::ged(nu);
      const double s = predictive_loglik(r, mu, s2, dist);
      csv += num(nu) + "," + num(s) + "\n";
      ordered_json o;
      o["nu"] = nu;
      o["S"] = jnum(s);
      arr.push_back(o);
    }
    j["predictive_loglik"] = arr;
    write_text(g, "predictive_loglik.csv", csv);
  }
  write_json(g, "evaluate.json", j);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SFIEGARCH simulation, estimation, forecasting and diagnostics"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "random seed")->capture_default_str();
  app.add_option("--config", g.config, "JSON model and option file");
  app.add_option("--out", g.out, "output directory")->capture_default_str();
  app.add_option("--threads", g.threads, "worker threads for grid evaluations")->capture_default_str()->check(
      CLI::PositiveNumber);

  SimArgs sim;
  auto* c_sim = app.add_subcommand("sim", "simulate a path (writes sim.csv)");
  c_sim->add_option("--n", sim.n, "path length")->capture_default_str();
  c_sim->add_option("--burn-in", sim.burn_in, "discarded leading points, default m-trunc");
  c_sim->add_option("--m-trunc", sim.m_trunc, "lambda truncation, default from the decay bound");

  IngestArgs ing;
  auto* c_ing = app.add_subcommand("ingest", "prices to percentage log-returns (writes returns.csv)");
  c_ing->add_option("--prices", ing.prices, "CSV with header timestamp,price")->required();
  c_ing->add_option("--frequency", ing.frequency, "frequency tag");
  c_ing->add_option("--block", ing.block, "returns summed per block")->capture_default_str();
  c_ing->add_option("--partial", ing.partial, "leftover block: drop or keep")->capture_default_str();
  c_ing->add_flag("--respect-days", ing.respect_days, "restart blocks at each day");
  c_ing->add_option("--day-boundaries", ing.day_boundaries, "file of RFC3339 day opening instants");

  FitArgs fit;
  auto* c_fit = app.add_subcommand("fit", "two-step QML fit (writes fit.json, residuals.csv)");
  c_fit->add_option("--data", fit.data, "returns CSV")->required();
  c_fit->add_option("--column", fit.column, "column name or index");
  c_fit->add_option("--s", fit.s, "season length")->capture_default_str();
  c_fit->add_option("--p", fit.p, "alpha order")->capture_default_str();
  c_fit->add_option("--q", fit.q, "beta order")->capture_default_str();
  c_fit->add_option("--fix-d", fit.fix_d, "hold d at this value");
  c_fit->add_option("--ar", fit.ar, "AR lags, comma separated");
  c_fit->add_option("--ma", fit.ma, "MA lags, comma separated");
  c_fit->add_flag("--mean", fit.mean, "include mu in the mean equation");
  c_fit->add_flag("--no-eliminate", fit.no_eliminate, "keep non-significant mean terms");
  c_fit->add_option("--level", fit.level, "elimination level")->capture_default_str();
  c_fit->add_option("--abs-mean-z", fit.abs_mean_z, "E|Z| in the recursion");
  c_fit->add_option("--max-iter", fit.max_iter, "optimizer iterations")->capture_default_str();

  ForecastArgs fc;
  auto* c_fc = app.add_subcommand("forecast", "h-step forecasts (writes forecast.csv)");
  c_fc->add_option("--fit", fc.fit, "fit.json from the fit command; otherwise --config is the model");
  c_fc->add_option("--data", fc.data, "returns CSV used as history")->required();
  c_fc->add_option("--column", fc.column, "column name or index");
  c_fc->add_option("--horizon", fc.h, "maximum horizon")->capture_default_str()->check(CLI::PositiveNumber);
  c_fc->add_option("--mode", fc.mode, "E(l) estimator: sample or analytic")->capture_default_str();
  c_fc->add_option("--day-counts", fc.day_counts, "returns per future day, comma separated");
  c_fc->add_option("--days", fc.days, "days aggregated, default all listed");

  AcovArgs ac;
  auto* c_ac = app.add_subcommand("acov", "theoretical autocovariances (writes acov.csv)");
  c_ac->add_option("--max-lag", ac.max_lag, "largest lag")->capture_default_str();

  SpectrumArgs sp;
  auto* c_sp = app.add_subcommand("spectrum", "spectral densities on [0, pi] (writes spectrum.csv)");
  c_sp->add_option("--points", sp.points, "grid intervals")->capture_default_str();
  c_sp->add_option("--periodogram", sp.periodogram, "series CSV for periodogram.csv");
  c_sp->add_option("--column", sp.column, "column of the periodogram series");

  DiagArgs dg;
  auto* c_dg = app.add_subcommand("diag", "residual diagnostics (writes diag.json)");
  c_dg->add_option("--data", dg.data, "residuals CSV")->required();
  c_dg->add_option("--x-column", dg.x_column, "residual column")->capture_default_str();
  c_dg->add_option("--sigma2-column", dg.sigma2_column, "fitted variance column, empty to skip")
      ->capture_default_str();
  c_dg->add_option("--lags", dg.lags, "portmanteau lags")->capture_default_str();
  c_dg->add_option("--fitted", dg.fitted, "mean-equation parameters for the df")->capture_default_str();
  c_dg->add_option("--nu", dg.nu, "GED shapes for the density transform")->capture_default_str();

  EvalArgs ev;
  auto* c_ev = app.add_subcommand("evaluate", "forecast evaluation (writes evaluate.json)");
  c_ev->add_option("--data", ev.data, "CSV with named columns");
  c_ev->add_option("--actual", ev.actual, "realized column")->capture_default_str();
  c_ev->add_option("--predicted", ev.predicted, "forecast column")->capture_default_str();
  c_ev->add_option("--benchmark", ev.benchmark, "benchmark forecast column, default zero");
  c_ev->add_option("--returns", ev.returns, "return column for the predictive log-likelihood");
  c_ev->add_option("--mu", ev.mu, "mean forecast column");
  c_ev->add_option("--sigma2", ev.sigma2, "variance forecast column");
  c_ev->add_option("--nu", ev.nu, "GED shapes")->capture_default_str();
  c_ev->add_option("--n-fit", ev.n_fit, "estimation sample size");
  c_ev->add_option("--hac-lags", ev.hac_lags, "Newey-West lags")->capture_default_str();
  c_ev->add_option("--horizon", ev.h, "forecast horizon for Diebold-Mariano")->capture_default_str();
  c_ev->add_option("--intraday", ev.intraday, "intraday returns CSV (column r) for realized.csv");
  c_ev->add_option("--day-counts", ev.day_counts, "day_counts.csv from ingest");
  c_ev->add_option("--window", ev.window, "days summed in v_window")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*c_sim) run_sim(g, c_sim, sim);
    else if (*c_ing) run_ingest(g, c_ing, ing);
    else if (*c_fit) run_fit(g, c_fit, fit);
    else if (*c_fc) run_forecast(g, c_fc, fc);
    else if (*c_ac) run_acov(g, c_ac, ac);
    else if (*c_sp) run_spectrum(g, c_sp, sp);
    else if (*c_dg) run_diag(g, c_dg, dg);
    else if (*c_ev) run_evaluate(g, c_ev, ev);
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NumericFailure& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 3;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
