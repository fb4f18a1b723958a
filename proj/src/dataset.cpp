#include "sfiegarch/dataset.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <regex>
#include <sstream>

#include "sfiegarch/error.hpp"

namespace sfg {

namespace {

std::string trim_ws(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(trim_ws(cell));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

bool parse_double(const std::string& s, double* v) {
  if (s.empty()) return false;
  char* end = nullptr;
  *v = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size() && std::isfinite(*v);
}

const std::regex& rfc3339() {
  static const std::regex re(
      R"((\d{4})-(\d{2})-(\d{2})[Tt ](\d{2}):(\d{2}):(\d{2})(\.\d+)?([Zz]|([+-])(\d{2}):(\d{2})))");
  return re;
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::int64_t parse_rfc3339(const std::string& ts) {
  std::smatch m;
  if (!std::regex_match(ts, m, rfc3339())) throw InvalidArgument("not an RFC3339 timestamp: " + ts);
  using namespace std::chrono;
  const int Y = std::stoi(m[1]);
  const unsigned M = std::stoul(m[2]), D = std::stoul(m[3]);
  const int hh = std::stoi(m[4]), mm = std::stoi(m[5]), ss = std::stoi(m[6]);
  const year_month_day ymd{year{Y}, month{M}, day{D}};
  if (!ymd.ok() || hh > 23 || mm > 59 || ss > 60) throw InvalidArgument("invalid date/time: " + ts);
  std::int64_t secs = sys_days(ymd).time_since_epoch().count() * 86400LL + hh * 3600 + mm * 60 + ss;
  if (m[9].matched) {
    const int off = std::stoi(m[10]) * 3600 + std::stoi(m[11]) * 60;
    secs -= (m[9] == "+" ? off : -off);
  }
  return secs;
}

Dataset ingest_prices_text(const std::string& text, const std::string& frequency) {
  std::stringstream in(text);
  std::string line;
  int lineno = 0;
  std::vector<std::string> ts;
  std::vector<std::int64_t> ep;
  std::vector<double> px;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim_ws(line);
    if (t.empty()) continue;
    auto cells = split_csv(t);
    if (!header_seen) {
      header_seen = true;
      if (cells.size() >= 2 && cells[0] == "timestamp" && cells[1] == "price") continue;
      throw InvalidArgument("line " + std::to_string(lineno) + ": expected header 'timestamp,price'");
    }
    if (cells.size() != 2) throw InvalidArgument("line " + std::to_string(lineno) + ": expected 2 fields");
    double p = 0.0;
    if (!parse_double(cells[1], &p)) throw InvalidArgument("line " + std::to_string(lineno) + ": malformed price");
    if (!(p > 0.0)) throw InvalidArgument("line " + std::to_string(lineno) + ": nonpositive price");
    std::int64_t e = 0;
    try {
      e = parse_rfc3339(cells[0]);
    } catch (const InvalidArgument& err) {
      throw InvalidArgument("line " + std::to_string(lineno) + ": " + err.what());
    }
    if (!ep.empty() && e <= ep.back())
      throw InvalidArgument("line " + std::to_string(lineno) + ": timestamps must be strictly increasing");
    ts.push_back(cells[0]);
    ep.push_back(e);
    px.push_back(p);
  }
  if (px.size() < 2) throw InvalidArgument("ingest: need at least two prices");
  Dataset ds;
  ds.frequency = frequency;
  ds.prices = Eigen::Map<Eigen::VectorXd>(px.data(), static_cast<Eigen::Index>(px.size()));
  ds.returns.resize(ds.prices.size() - 1);
  for (Eigen::Index i = 1; i < ds.prices.size(); ++i)
    ds.returns(i - 1) = 100.0 * std::log(ds.prices(i) / ds.prices(i - 1));
  ds.timestamps.assign(ts.begin() + 1, ts.end());
  ds.epoch.assign(ep.begin() + 1, ep.end());
  ds.day_counts = day_counts_by_local_date(ds.timestamps);
  return ds;
}

Dataset ingest_prices(const std::string& path, const std::string& frequency) {
  return ingest_prices_text(read_file(path), frequency);
}

std::vector<int> day_counts_by_local_date(const std::vector<std::string>& timestamps) {
  std::vector<int> counts;
  std::string last;
  for (const auto& t : timestamps) {
    const std::string date = t.substr(0, 10);
    if (counts.empty() || date != last) {
      counts.push_back(0);
      last = date;
    }
    ++counts.back();
  }
  return counts;
}

std::vector<int> day_counts_from_boundaries(const std::vector<std::int64_t>& epoch,
                                            const std::vector<std::int64_t>& boundaries) {
  std::vector<int> counts;
  std::size_t b = 0;
  long current = -1;
  for (auto e : epoch) {
    while (b < boundaries.size() && boundaries[b] < e) ++b;
    const long day = static_cast<long>(b);
    if (counts.empty() || day != current) {
      counts.push_back(0);
      current = day;
    }
    ++counts.back();
  }
  return counts;
}

Dataset aggregate_returns(const Dataset& ds, int group_size, PartialBlock partial, bool respect_days) {
  if (group_size < 1) throw InvalidArgument("aggregate_returns: group size must be >= 1");
  const Eigen::Index n = ds.returns.size();
  std::vector<int> days = respect_days && !ds.day_counts.empty() ? ds.day_counts : std::vector<int>{static_cast<int>(n)};
  long check = 0;
  for (int c : days) check += c;
  if (check != n) throw InvalidArgument("aggregate_returns: day counts do not match the series");
  Dataset out;
  out.frequency = ds.frequency.empty() ? "" : ds.frequency + "x" + std::to_string(group_size);
  std::vector<double> r;
  Eigen::Index pos = 0;
  for (int c : days) {
    int in_day = 0;
    for (int start = 0; start < c; start += group_size) {
      const int len = std::min(group_size, c - start);
      if (len < group_size && partial == PartialBlock::drop) break;
      r.push_back(ds.returns.segment(pos + start, len).sum());
      const Eigen::Index last = pos + start + len - 1;
      if (!ds.timestamps.empty()) out.timestamps.push_back(ds.timestamps[last]);
      if (!ds.epoch.empty()) out.epoch.push_back(ds.epoch[last]);
      ++in_day;
    }
    pos += c;
    if (respect_days && in_day > 0) out.day_counts.push_back(in_day);
  }
  out.returns = Eigen::Map<Eigen::VectorXd>(r.data(), static_cast<Eigen::Index>(r.size()));
  if (!respect_days && !out.timestamps.empty()) out.day_counts = day_counts_by_local_date(out.timestamps);
  return out;
}

DescriptiveStats descriptive_stats(const Eigen::VectorXd& x) {
  const Eigen::Index n = x.size();
  if (n < 4) throw InvalidArgument("descriptive_stats: need at least 4 observations");
  DescriptiveStats s;
  s.mean = x.mean();
  const Eigen::ArrayXd c = x.array() - s.mean;
  const double m2 = c.square().mean();
  s.sd = std::sqrt(c.square().sum() / static_cast<double>(n - 1));
  if (!(m2 > 0.0)) {
    s.sd = 0.0;
    s.moments_defined = false;
    s.kurtosis = s.skewness = std::numeric_limits<double>::quiet_NaN();
    return s;
  }
  s.skewness = c.cube().mean() / std::pow(m2, 1.5);
  s.kurtosis = c.square().square().mean() / (m2 * m2);
  return s;
}

Eigen::VectorXd read_series_csv(const std::string& path, const std::string& column) {
  std::stringstream in(read_file(path));
  std::string line;
  int lineno = 0;
  int col = -1;
  std::vector<double> v;
  bool first = true;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim_ws(line);
    if (t.empty()) continue;
    auto cells = split_csv(t);
    if (first) {
      first = false;
      double tmp = 0.0;
      const bool numeric_row = parse_double(cells[0], &tmp);
      if (!column.empty()) {
        for (std::size_t i = 0; i < cells.size(); ++i)
          if (cells[i] == column) col = static_cast<int>(i);
        if (col < 0) {
          double idx = 0.0;
          if (parse_double(column, &idx)) col = static_cast<int>(idx);
        }
        if (col < 0) throw InvalidArgument(path + ": column not found: " + column);
      } else {
        col = static_cast<int>(cells.size()) - 1;
      }
      if (!numeric_row) continue;
    }
    if (col >= static_cast<int>(cells.size()))
      throw InvalidArgument(path + " line " + std::to_string(lineno) + ": missing column");
    double val = 0.0;
    if (!parse_double(cells[col], &val))
      throw InvalidArgument(path + " line " + std::to_string(lineno) + ": malformed number");
    v.push_back(val);
  }
  return Eigen::Map<Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace sfg
