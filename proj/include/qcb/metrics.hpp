#pragma once

#include <cstdint>
#include <vector>

#include "qcb/matrix.hpp"

namespace qcb::eval {

struct ClassScores {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t support = 0;
};

struct ClassificationMetrics {
  double accuracy = 0.0;
  /// Support-weighted averages over classes.
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::vector<ClassScores> per_class;
};

/// One-vs-rest scores for classes 0..n_classes-1. A class with no predicted
/// members has precision 0; F1 is 0 whenever precision + recall is 0.
ClassificationMetrics classification_metrics(const Labels& y_true, const Labels& y_pred, int n_classes);

/// Fold index per sample. Each class is shuffled and dealt round-robin,
/// continuing from where the previous class stopped so fold sizes stay level.
/// Throws DataError naming any class with fewer than n_folds members.
std::vector<int> stratified_folds(const Labels& y, int n_folds, std::uint64_t seed);

/// 1 marks test rows: round(test_fraction * class size) per class, at least
/// one, at most class size - 1.
std::vector<int> stratified_holdout(const Labels& y, double test_fraction, std::uint64_t seed);

}  // namespace qcb::eval
