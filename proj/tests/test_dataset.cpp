#include "doctest.h"

#include <cmath>
#include <fstream>

#include "sfiegarch/dataset.hpp"
#include "sfiegarch/error.hpp"
#include "sfiegarch/innovations.hpp"

using namespace sfg;

TEST_CASE("timestamps") {
  CHECK(parse_rfc3339("1970-01-01T00:00:00Z") == 0);
  CHECK(parse_rfc3339("2003-01-02T08:30:00-06:00") == parse_rfc3339("2003-01-02T14:30:00Z"));
  CHECK(parse_rfc3339("2003-01-02T08:30:00.5+00:00") == parse_rfc3339("2003-01-02T08:30:00Z"));
  CHECK_THROWS_AS(parse_rfc3339("2003-02-30T08:30:00Z"), InvalidArgument);
  CHECK_THROWS_AS(parse_rfc3339("yesterday"), InvalidArgument);
}

TEST_CASE("price ingestion") {
  auto a = ingest_prices_text("timestamp,price\n2003-01-02T08:30:00Z,100\n2003-01-02T08:45:00Z,100\n");
  REQUIRE(a.returns.size() == 1);
  CHECK(a.returns(0) == 0.0);
  CHECK(a.timestamps[0] == "2003-01-02T08:45:00Z");

  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", 100.0 * std::exp(0.01));
  auto b = ingest_prices_text(std::string("timestamp,price\n2003-01-02T08:30:00Z,100\n2003-01-02T08:45:00Z,") + buf + "\n");
  CHECK(b.returns(0) == doctest::Approx(1.0).epsilon(1e-13));

  try {
    ingest_prices_text("timestamp,price\n2003-01-02T08:30:00Z,100\n2003-01-02T08:45:00Z,-1\n");
    FAIL("nonpositive price accepted");
  } catch (const InvalidArgument& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  try {
    ingest_prices_text("timestamp,price\n2003-01-02T08:30:00Z,100\nbad,1\n");
    FAIL("malformed row accepted");
  } catch (const InvalidArgument& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  CHECK_THROWS_AS(ingest_prices_text("time,price\n"), InvalidArgument);
  CHECK_THROWS_AS(ingest_prices_text("timestamp,price\n2003-01-02T08:30:00Z,100\n2003-01-02T08:30:00Z,101\n"),
                  InvalidArgument);
}

TEST_CASE("day counts and aggregation") {
  std::string csv = "timestamp,price\n";
  // 5 days of 28 fifteen-minute returns plus the opening price
  std::vector<std::string> ts;
  double p = 100.0;
  int k = 0;
  for (int day = 0; day < 5; ++day) {
    for (int i = 0; i <= 28; ++i) {
      if (day > 0 && i == 0) continue;
      char b[64];
      std::snprintf(b, sizeof b, "2003-01-%02dT%02d:%02d:00-06:00", 6 + day, 8 + (30 + 15 * i) / 60,
                    (30 + 15 * i) % 60);
      csv += std::string(b) + "," + std::to_string(p) + "\n";
      p *= 1.0 + 0.001 * ((k++ % 5) - 2);
    }
  }
  auto ds = ingest_prices_text(csv, "15min");
  CHECK(ds.prices.size() == ds.returns.size() + 1);
  auto counts = day_counts_by_local_date(ds.timestamps);
  REQUIRE(counts.size() == 5);
  CHECK(counts[0] == 28);
  ds.day_counts = counts;
  auto h = aggregate_returns(ds, 4, PartialBlock::drop, true);
  CHECK(h.returns.size() == 5 * 7);
  CHECK(h.returns.sum() == doctest::Approx(ds.returns.sum()).epsilon(1e-12));
  CHECK(h.day_counts == std::vector<int>(5, 7));

  auto same = aggregate_returns(ds, 1);
  CHECK(same.returns == ds.returns);

  std::vector<std::int64_t> bounds{parse_rfc3339("2003-01-06T08:30:00-06:00"), parse_rfc3339("2003-01-08T08:30:00-06:00")};
  auto bc = day_counts_from_boundaries(ds.epoch, bounds);
  REQUIRE(bc.size() == 2);
  CHECK(bc[0] + bc[1] == ds.returns.size());
  CHECK(bc[0] == 2 * 28);
}

TEST_CASE("33992 fifteen-minute returns aggregate to 8498 hourly") {
  Dataset ds;
  ds.returns = sample(InnovationDist::gaussian(), 33992, 2);
  auto h = aggregate_returns(ds, 4);
  CHECK(h.returns.size() == 8498);
  CHECK(h.returns.sum() == doctest::Approx(ds.returns.sum()).epsilon(1e-10));
  ds.returns.conservativeResize(33990);
  CHECK(aggregate_returns(ds, 4, PartialBlock::drop).returns.size() == 8497);
  auto kept = aggregate_returns(ds, 4, PartialBlock::keep);
  CHECK(kept.returns.size() == 8498);
  CHECK(kept.returns.sum() == doctest::Approx(ds.returns.sum()).epsilon(1e-10));
  CHECK_THROWS_AS(aggregate_returns(ds, 0), InvalidArgument);
}

TEST_CASE("descriptive statistics") {
  auto z = sample(InnovationDist::gaussian(), 1000000, 3);
  auto st = descriptive_stats(z);
  CHECK(std::abs(st.kurtosis - 3.0) < 5 * std::sqrt(24.0 / 1e6));
  CHECK(std::abs(st.skewness) < 5 * std::sqrt(6.0 / 1e6));
  CHECK(std::abs(st.sd - 1.0) < 0.005);
  auto c = descriptive_stats(Eigen::VectorXd::Constant(10, 1.5));
  CHECK(c.sd == 0.0);
  CHECK_FALSE(c.moments_defined);
  Eigen::VectorXd sym(4);
  sym << -2, -1, 1, 2;
  CHECK(descriptive_stats(sym).skewness == 0.0);
}

TEST_CASE("series csv reader") {
  const std::string path = "test_dataset_series.csv";
  {
    std::ofstream o(path);
    o << "t,x,sigma2\n0,1.5,2\n1,-0.5,3\n";
  }
  auto x = read_series_csv(path, "x");
  REQUIRE(x.size() == 2);
  CHECK(x(1) == -0.5);
  CHECK(read_series_csv(path, "2")(0) == 2.0);
  CHECK_THROWS_AS(read_series_csv(path, "nope"), InvalidArgument);
  CHECK_THROWS_AS(read_series_csv("missing.csv"), InvalidArgument);
  std::remove(path.c_str());
}
