#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "qcb/matrix.hpp"

namespace qcb::classical {

/// Common surface for every trainable model in the benchmark.
class Classifier {
 public:
  virtual ~Classifier() = default;

  virtual void fit(const Matrix& X, const Labels& y, std::uint64_t seed) = 0;
  virtual Labels predict(const Matrix& X) const = 0;

  /// Fingerprint of all fitted state.
  virtual std::uint64_t checksum() const = 0;
  /// Number of stored values learned during fit.
  virtual std::size_t fitted_param_count() const = 0;
  /// True when training saw a single class and the model predicts a constant.
  virtual bool degenerate() const { return false; }
};

/// Sorted distinct labels. Throws UsageError when y is empty.
std::vector<int> distinct_classes(const Labels& y);

/// Most frequent label; lowest label wins ties.
int majority_label(const Labels& y);

/// Predicts the training majority class.
class MajorityClassifier final : public Classifier {
 public:
  void fit(const Matrix& X, const Labels& y, std::uint64_t seed) override;
  Labels predict(const Matrix& X) const override;
  std::uint64_t checksum() const override;
  std::size_t fitted_param_count() const override { return 1; }
  bool degenerate() const override { return single_class_; }

 private:
  int label_ = 0;
  bool single_class_ = false;
};

}  // namespace qcb::classical
