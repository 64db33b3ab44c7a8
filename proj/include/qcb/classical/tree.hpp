#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qcb/classical/classifier.hpp"
#include "qcb/fingerprint.hpp"
#include "qcb/rng.hpp"

namespace qcb::classical {

struct TreeParams {
  int max_depth = 15;
  int min_samples_split = 2;
  /// Features examined per split; 0 means all.
  int max_features = 0;
};

/// CART with Gini impurity and midpoint thresholds, unpruned.
class DecisionTree final : public Classifier {
 public:
  explicit DecisionTree(TreeParams p = {}) : params_(p) {}

  void fit(const Matrix& X, const Labels& y, std::uint64_t seed) override;
  /// Fit on the rows listed in `rows` (duplicates allowed, for bootstrap).
  void fit_rows(const Matrix& X, const Labels& y, std::span<const std::size_t> rows, std::uint64_t seed);

  Labels predict(const Matrix& X) const override;
  int predict_row(std::span<const double> x) const;

  std::uint64_t checksum() const override;
  void add_to(Fingerprint& fp) const;
  std::size_t fitted_param_count() const override { return nodes_.size() * 2; }
  bool degenerate() const override { return single_class_; }

  int depth() const;
  std::size_t node_count() const { return nodes_.size(); }

 private:
  struct Node {
    int feature = -1;
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    int label = 0;
    int depth = 0;
  };

  int grow(const Matrix& X, const Labels& y, std::vector<std::size_t>& rows, std::size_t begin, std::size_t end,
           int depth, Rng& rng);

  TreeParams params_;
  std::vector<int> classes_;
  std::vector<Node> nodes_;
  bool single_class_ = false;
};

struct ForestParams {
  int n_trees = 150;
  int max_depth = 15;
  /// 0 selects ceil(sqrt(d)).
  int max_features = 0;
};

/// Bagged CART ensemble with majority vote. Tree t draws from a stream
/// derived from (seed, t), so fits are reproducible under any thread count.
class RandomForest final : public Classifier {
 public:
  explicit RandomForest(ForestParams p = {}) : params_(p) {}

  void fit(const Matrix& X, const Labels& y, std::uint64_t seed) override;
  Labels predict(const Matrix& X) const override;
  std::uint64_t checksum() const override;
  std::size_t fitted_param_count() const override;
  bool degenerate() const override { return single_class_; }

  const std::vector<DecisionTree>& trees() const { return trees_; }

 private:
  ForestParams params_;
  std::vector<int> classes_;
  std::vector<DecisionTree> trees_;
  bool single_class_ = false;
};

}  // namespace qcb::classical
