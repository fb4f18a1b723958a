#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

namespace sfg {

struct Dataset {
  std::vector<std::string> timestamps;  ///< one per return, the closing timestamp
  std::vector<std::int64_t> epoch;      ///< seconds since the Unix epoch (UTC)
  Eigen::VectorXd prices;               ///< empty when the dataset holds returns only
  Eigen::VectorXd returns;
  std::string frequency;                ///< free-form tag such as "15min" or "1h"
  std::vector<int> day_counts;          ///< returns per trading day M_t
};

/// Seconds since the epoch of an RFC3339 timestamp such as 2003-01-02T08:30:00-06:00.
std::int64_t parse_rfc3339(const std::string& ts);

/// Reads a timestamp,price CSV and forms R_t = 100 ln(P_t / P_{t-1}).
Dataset ingest_prices(const std::string& path, const std::string& frequency = "");

/// Same from in-memory CSV text.
Dataset ingest_prices_text(const std::string& text, const std::string& frequency = "");

/// Day of each return: either the UTC-offset local calendar date, or an index from a boundary list.
/// Boundaries are RFC3339 instants; a return belongs to the day opened by the last boundary before it.
std::vector<int> day_counts_from_boundaries(const std::vector<std::int64_t>& epoch,
                                            const std::vector<std::int64_t>& boundaries);
std::vector<int> day_counts_by_local_date(const std::vector<std::string>& timestamps);

enum class PartialBlock { drop, keep };

/// Block sums of group_size consecutive returns, restarting at each day when respect_days is set.
Dataset aggregate_returns(const Dataset& ds, int group_size, PartialBlock partial = PartialBlock::drop,
                          bool respect_days = false);

struct DescriptiveStats {
  double mean = 0.0;
  double sd = 0.0;
  double kurtosis = 0.0;  ///< raw, not excess
  double skewness = 0.0;
  bool moments_defined = true;  ///< false for a constant series
};
DescriptiveStats descriptive_stats(const Eigen::VectorXd& x);

/// Single numeric column CSV (optional header). column selects a column by name or 0-based index text.
Eigen::VectorXd read_series_csv(const std::string& path, const std::string& column = "");

/// Read an entire file; throws InvalidArgument when missing.
std::string read_file(const std::string& path);

}  // namespace sfg
