#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qcb/data.hpp"
#include "qcb/registry.hpp"
#include "qcb/stats.hpp"

namespace qcb::eval {

inline constexpr const char* kReportSchema = "qcb-report/1";

struct CvPlan {
  int n_folds = 5;
  std::vector<std::uint64_t> seeds{0, 1, 2, 3, 4};
  bool stratified = true;
  /// > 0 replaces k-fold with one stratified train/test split per seed.
  double holdout_fraction = 0.0;

  void validate() const;
  bool operator==(const CvPlan&) const = default;
};

struct RunOptions {
  std::uint64_t master_seed = 0;
  /// Model id whose timing and accuracy anchor speedup and gap.
  std::string reference = "random_forest";
  bool parallel = true;
};

using Interval = stats::ConfidenceInterval;

struct CellResult {
  std::string model;
  int seed_index = 0;
  int fold = 0;
  bool ok = false;
  std::string error;
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::vector<double> per_class_f1;
  std::vector<double> per_class_recall;
  std::uint64_t checksum = 0;
  /// -1 when the model has no circuit.
  int circuit_depth = -1;
  std::size_t fitted_params = 0;
  int intermediate_features = 0;
  double train_seconds = 0.0;

  bool operator==(const CellResult&) const = default;
};

struct ModelSummary {
  std::string id;
  std::string display;
  std::string category;
  int n_qubits = 0;
  int layers = 0;
  int cells_ok = 0;
  int cells_failed = 0;
  Interval accuracy;
  Interval precision;
  Interval recall;
  Interval f1;
  std::vector<double> per_class_f1;
  std::vector<double> per_class_accuracy;
  /// Trainable circuit angles for quantum models, learned values otherwise.
  double param_count = 0.0;
  std::optional<double> circuit_depth;
  int intermediate_features = 0;
  std::optional<double> qubit_efficiency;
  std::optional<double> gap_vs_reference;
  // Timing-derived; excluded from reproducibility comparisons.
  Interval train_seconds;
  std::optional<double> speedup_vs_reference;

  bool operator==(const ModelSummary&) const = default;
};

struct PairwiseTest {
  std::string a;
  std::string b;
  int n = 0;
  double t = 0.0;
  double p = 1.0;
  double cohens_d = 0.0;
  std::string branch;
  std::string stars;

  bool operator==(const PairwiseTest&) const = default;
};

struct DatasetSummary {
  std::size_t n_samples = 0;
  std::vector<std::string> feature_names;
  std::vector<std::size_t> class_counts;
  std::string provenance;

  bool operator==(const DatasetSummary&) const = default;
};

struct ExpressibilityPoint {
  int n_qubits = 0;
  int layers = 0;
  double score = 0.0;
  double kl_divergence = 0.0;
  int n_pairs = 0;

  bool operator==(const ExpressibilityPoint&) const = default;
};

struct MetricsReport {
  std::string schema = kReportSchema;
  std::uint64_t master_seed = 0;
  std::string reference;
  CvPlan plan;
  DatasetSummary dataset;
  /// Every row appears in exactly one test fold per seed and folds match the
  /// class proportions within one sample.
  bool stratification_ok = false;
  std::map<std::string, std::string> deviations;
  std::vector<ModelSummary> models;
  std::vector<PairwiseTest> pairwise;
  std::vector<CellResult> cells;
  std::vector<ExpressibilityPoint> expressibility;

  int failed_cells() const;
  const ModelSummary* find(const std::string& id) const;
  bool operator==(const MetricsReport&) const = default;
};

/// Documented departures from the reference method, recorded in every report.
std::map<std::string, std::string> default_deviations();

/// Folds for one seed: test-fold index per row (holdout: 0 = test, 1 = train).
std::vector<int> plan_folds(const Labels& y, const CvPlan& plan, std::size_t seed_index, std::uint64_t master_seed);

/// Checks coverage and per-class balance of a fold assignment.
bool folds_are_stratified(const Labels& y, const std::vector<int>& folds, int n_folds);

/// Fits and scores every (seed, fold, model) cell, then aggregates. Cells are
/// independent and run in parallel when enabled; each draws its seed from
/// (master seed, model id, seed index, fold), so results do not depend on the
/// schedule. A failing cell is recorded and the run continues.
MetricsReport run_benchmark(const data::LabeledDataset& dataset, const std::vector<ModelSpec>& registry,
                            const CvPlan& plan, const RunOptions& options = {});

/// Paired t-test on two score maps keyed by (seed, fold). Throws UsageError
/// unless both maps have exactly the same keys.
stats::PairedTTest aligned_ttest(const std::map<std::pair<int, int>, double>& a,
                                 const std::map<std::pair<int, int>, double>& b);

}  // namespace qcb::eval
