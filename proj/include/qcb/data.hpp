#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "qcb/matrix.hpp"

namespace qcb::data {

enum class Severity { Low = 0, Medium = 1, High = 2, Critical = 3 };

inline constexpr int kSeverityClasses = 4;

std::string to_string(Severity s);

/// Column layout and aggregate definitions for crime-count tables.
struct CrimeSchema {
  std::vector<std::string> crime_types;
  std::vector<std::string> violent;
  std::vector<std::string> property;
  std::vector<std::string> social;
  /// Raw count columns carried through as features.
  std::vector<std::string> raw_features;
  /// Header aliases accepted on ingest: alias -> canonical crime type.
  std::map<std::string, std::string> aliases;

  /// Sixteen crime types with the default aggregate lists.
  static CrimeSchema default_schema();
  void validate() const;
};

struct CrimeRecord {
  std::string unit;
  int year = 0;
  std::map<std::string, std::int64_t> counts;
  /// 1-based data row in the source file; 0 for synthetic records.
  long source_row = 0;

  std::int64_t count(const std::string& type) const;
  bool operator==(const CrimeRecord& o) const { return unit == o.unit && year == o.year && counts == o.counts; }
};

enum class Provenance { Ingested, Synthetic };

struct LabeledDataset {
  std::vector<std::string> feature_names;
  Matrix X;
  Labels y;
  Provenance provenance = Provenance::Ingested;
  /// Aggregate definitions used to build the features.
  std::map<std::string, std::vector<std::string>> aggregates;

  std::size_t size() const { return y.size(); }
  void validate() const;
};

struct SeverityInputs {
  /// Violent share of total cases, in [0, 1]; 0 when total is 0.
  double violent_ratio = 0.0;
  double total_cases = 0.0;

  static SeverityInputs from_counts(double violent_total, double total_cases);
};

/// Four-tier rule, evaluated top-down with strict inequalities:
/// Critical (r_v > 0.3 or C_t > 30000), High (> 0.15 or > 15000),
/// Medium (> 0.05 or > 5000), otherwise Low.
Severity severity_label(const SeverityInputs& s);

/// Header: Unit, Year, then the schema's crime types (any order).
/// Throws DataError naming the row and column of the first problem.
std::vector<CrimeRecord> ingest_csv(const std::filesystem::path& path, const CrimeSchema& schema);
std::vector<CrimeRecord> parse_csv(const std::string& text, const CrimeSchema& schema);

void write_csv(const std::filesystem::path& path, const std::vector<CrimeRecord>& records, const CrimeSchema& schema);
std::string format_csv(const std::vector<CrimeRecord>& records, const CrimeSchema& schema);

/// Engineered features per record, labeled with severity_label:
/// Total Cases, Violent/Property/Social Crime Total, Crime Std (population),
/// Crime Diversity (nonzero types), and the schema's raw count columns.
LabeledDataset engineer_features(const std::vector<CrimeRecord>& records, const CrimeSchema& schema);

/// Keeps the k features with the highest mutual information against labels,
/// ordered by decreasing score (ties keep column order).
LabeledDataset select_features(const LabeledDataset& d, int k = 10, int n_bins = 10);

/// Mutual information score per feature column.
std::vector<double> feature_scores(const LabeledDataset& d, int n_bins = 10);

struct SynthParams {
  int n_units = 18;
  int n_years = 16;
  std::uint64_t seed = 0;
  int first_year = 2005;
};

/// Seeded stand-in for the reporting-unit x year crime table: log-normal unit
/// scales, per-unit trends, shared year effects, and Poisson counts.
std::vector<CrimeRecord> synthesize(const SynthParams& p, const CrimeSchema& schema);

}  // namespace qcb::data
