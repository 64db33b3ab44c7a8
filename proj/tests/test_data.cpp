#include <doctest.h>

#include <cmath>
#include <set>

#include "oracle.hpp"
#include "qcb/circuits.hpp"
#include "qcb/data.hpp"
#include "qcb/errors.hpp"
#include "qcb/rng.hpp"

using namespace qcb;
using namespace qcb::data;

namespace {

const CrimeSchema& schema() {
  static const CrimeSchema s = CrimeSchema::default_schema();
  return s;
}

std::string header() {
  std::string h = "Unit,Year";
  for (const auto& t : schema().crime_types) h += "," + t;
  return h + "\n";
}

std::string row(const std::string& unit, int year, const std::string& murder = "0") {
  std::string r = unit + "," + std::to_string(year);
  for (const auto& t : schema().crime_types) r += "," + (t == "Murder" ? murder : std::string("1"));
  return r + "\n";
}

CrimeRecord record(std::map<std::string, std::int64_t> counts) {
  CrimeRecord r;
  r.unit = "U";
  r.year = 2010;
  r.counts = std::move(counts);
  return r;
}

}  // namespace

TEST_CASE("default schema") {
  const auto& s = schema();
  CHECK(s.crime_types.size() == 16);
  CHECK(std::set<std::string>(s.violent.begin(), s.violent.end()) ==
        std::set<std::string>{"Murder", "Dacoity", "Robbery", "Kidnapping", "Riot"});
  CHECK(s.raw_features ==
        std::vector<std::string>{"Woman & Child Repression", "Other Cases", "Murder", "Theft", "Robbery"});
  CHECK_NOTHROW(s.validate());
  auto bad = s;
  bad.violent.push_back("Piracy");
  CHECK_THROWS(bad.validate());
}

TEST_CASE("severity thresholds are strict") {
  CHECK(severity_label({0.35, 100}) == Severity::Critical);
  CHECK(severity_label({0.10, 20000}) == Severity::High);
  CHECK(severity_label({0.0, 0}) == Severity::Low);
  CHECK(severity_label({0.3, 0}) == Severity::High);
  CHECK(severity_label({0.15, 0}) == Severity::Medium);
  CHECK(severity_label({0.05, 0}) == Severity::Low);
  CHECK(severity_label({0.0, 30000}) == Severity::High);
  CHECK(severity_label({0.0, 30001}) == Severity::Critical);
  CHECK(severity_label({0.0, 5000}) == Severity::Low);
  CHECK(severity_label({0.0, 5001}) == Severity::Medium);
}

TEST_CASE("severity is monotone in both inputs") {
  Rng rng(1);
  for (int k = 0; k < 2000; ++k) {
    const double r = rng.uniform(0, 1), c = rng.uniform(0, 40000);
    const auto base = severity_label({r, c});
    CHECK(severity_label({std::min(1.0, r + rng.uniform(0, 0.3)), c}) >= base);
    CHECK(severity_label({r, c + rng.uniform(0, 20000)}) >= base);
  }
}

TEST_CASE("severity inputs from counts") {
  CHECK(SeverityInputs::from_counts(0, 0).violent_ratio == 0.0);
  CHECK(SeverityInputs::from_counts(25, 100).violent_ratio == 0.25);
  CHECK_THROWS(SeverityInputs::from_counts(5, 2));
  CHECK_THROWS(SeverityInputs::from_counts(-1, 2));
}

TEST_CASE("CSV ingest") {
  const auto recs = parse_csv(header() + row("Dhaka", 2010) + row("Sylhet", 2011, "7"), schema());
  REQUIRE(recs.size() == 2);
  CHECK(recs[1].unit == "Sylhet");
  CHECK(recs[1].count("Murder") == 7);
  CHECK(recs[1].source_row == 2);
}

TEST_CASE("CSV errors carry row and column") {
  try {
    parse_csv(header() + row("A", 2010) + row("B", 2010, "-3"), schema());
    FAIL("expected DataError");
  } catch (const DataError& e) {
    CHECK(e.row() == 2);
    CHECK(e.column() == "Murder");
  }
  try {
    parse_csv(header() + row("A", 2010, "x1"), schema());
    FAIL("expected DataError");
  } catch (const DataError& e) {
    CHECK(e.row() == 1);
    CHECK(e.column() == "Murder");
  }
  std::string no_murder = "Unit,Year";
  for (const auto& t : schema().crime_types)
    if (t != "Murder") no_murder += "," + t;
  try {
    parse_csv(no_murder + "\n", schema());
    FAIL("expected DataError");
  } catch (const DataError& e) {
    CHECK(e.column() == "Murder");
  }
  CHECK_THROWS_AS(parse_csv("Unit,Year,Piracy\n", schema()), DataError);
  CHECK_THROWS_AS(parse_csv(header() + "A,2010,1\n", schema()), DataError);
  CHECK_THROWS_AS(ingest_csv("/nonexistent/file.csv", schema()), DataError);
}

TEST_CASE("CSV round trip") {
  const auto recs = synthesize({4, 3, 11, 2000}, schema());
  CHECK(parse_csv(format_csv(recs, schema()), schema()) == recs);
}

TEST_CASE("feature engineering") {
  const auto zero = engineer_features({record({})}, schema());
  CHECK(zero.feature_names.size() == 11);
  for (std::size_t c = 0; c < 11; ++c) CHECK(zero.X(0, c) == 0.0);
  CHECK(zero.y[0] == static_cast<int>(Severity::Low));

  const auto d = engineer_features({record({{"Murder", 5}, {"Robbery", 3}})}, schema());
  CHECK(d.X(0, 0) == 8);  // total
  CHECK(d.X(0, 1) == 8);  // violent
  CHECK(d.X(0, 2) == 3);  // property includes robbery
  CHECK(d.X(0, 5) == 2);  // diversity
  CHECK(d.y[0] == static_cast<int>(Severity::Critical));
}

TEST_CASE("crime std matches the two-pass oracle") {
  Rng rng(3);
  std::map<std::string, std::int64_t> counts;
  std::vector<double> v;
  for (const auto& t : schema().crime_types) {
    const auto c = static_cast<std::int64_t>(rng.below(5000));
    counts[t] = c;
    v.push_back(static_cast<double>(c));
  }
  const auto d = engineer_features({record(counts)}, schema());
  CHECK(d.X(0, 4) == doctest::Approx(std::sqrt(oracle::two_pass_variance(v))).epsilon(1e-12));
}

TEST_CASE("aggregate invariants on synthetic data") {
  const auto recs = synthesize({}, schema());
  const auto d = engineer_features(recs, schema());
  CHECK_NOTHROW(d.validate());
  for (std::size_t i = 0; i < recs.size(); ++i) {
    double violent = 0;
    for (const auto& t : schema().violent) violent += static_cast<double>(recs[i].count(t));
    CHECK(d.X(i, 1) == violent);
    for (std::size_t c = 0; c < d.X.cols(); ++c) CHECK(d.X(i, c) >= 0.0);
  }
}

TEST_CASE("synthetic generator") {
  const auto a = synthesize({}, schema()), b = synthesize({}, schema());
  CHECK(a.size() == 288);
  CHECK(a == b);
  CHECK(synthesize({18, 16, 1, 2005}, schema()) != a);
  const auto d = engineer_features(a, schema());
  std::vector<int> counts(4, 0);
  for (int v : d.y) ++counts[static_cast<std::size_t>(v)];
  for (int c : counts) CHECK(c >= 5);
  CHECK(counts[3] < 0.15 * 288);
  const auto g = circuits::build_correlation_graph(d.X);
  CHECK(!g.pairs.empty());
  CHECK_THROWS(synthesize({0, 16, 0, 2005}, schema()));
}

TEST_CASE("feature selection") {
  auto d = engineer_features(synthesize({}, schema()), schema());
  const auto all = select_features(d, static_cast<int>(d.X.cols()));
  CHECK(all.X.cols() == d.X.cols());
  const auto ten = select_features(d, 10);
  CHECK(ten.feature_names.size() == 10);
  CHECK(select_features(d, 10).feature_names == ten.feature_names);
  const auto scores = feature_scores(ten);
  for (std::size_t k = 1; k < scores.size(); ++k) CHECK(scores[k] <= scores[k - 1]);
  CHECK_THROWS(select_features(d, 12));

  // A column equal to the label code attains maximal MI.
  Matrix X(d.X.rows(), d.X.cols() + 1);
  for (std::size_t r = 0; r < X.rows(); ++r) {
    for (std::size_t c = 0; c < d.X.cols(); ++c) X(r, c) = d.X(r, c);
    X(r, d.X.cols()) = d.y[r];
  }
  d.X = X;
  d.feature_names.push_back("label");
  CHECK(select_features(d, 1).feature_names == std::vector<std::string>{"label"});
}
