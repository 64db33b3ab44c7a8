#include "qcb/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "qcb/errors.hpp"
#include "qcb/rng.hpp"

namespace qcb::eval {

ClassificationMetrics classification_metrics(const Labels& y_true, const Labels& y_pred, int n_classes) {
  if (y_true.size() != y_pred.size()) throw UsageError("classification_metrics: length mismatch");
  if (n_classes < 1) throw UsageError("classification_metrics: n_classes must be positive");
  const auto k = static_cast<std::size_t>(n_classes);
  std::vector<std::size_t> tp(k), fp(k), fn(k), support(k);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    const int t = y_true[i], p = y_pred[i];
    if (t < 0 || t >= n_classes || p < 0 || p >= n_classes)
      throw UsageError("classification_metrics: label outside [0, n_classes)");
    ++support[static_cast<std::size_t>(t)];
    if (t == p) {
      ++correct;
      ++tp[static_cast<std::size_t>(t)];
    } else {
      ++fp[static_cast<std::size_t>(p)];
      ++fn[static_cast<std::size_t>(t)];
    }
  }
  ClassificationMetrics m;
  const double n = static_cast<double>(y_true.size());
  m.accuracy = y_true.empty() ? 0.0 : static_cast<double>(correct) / n;
  m.per_class.resize(k);
  for (std::size_t c = 0; c < k; ++c) {
    auto& s = m.per_class[c];
    s.support = support[c];
    s.precision = tp[c] + fp[c] ? static_cast<double>(tp[c]) / static_cast<double>(tp[c] + fp[c]) : 0.0;
    s.recall = tp[c] + fn[c] ? static_cast<double>(tp[c]) / static_cast<double>(tp[c] + fn[c]) : 0.0;
    s.f1 = s.precision + s.recall > 0 ? 2.0 * s.precision * s.recall / (s.precision + s.recall) : 0.0;
    if (!y_true.empty()) {
      const double w = static_cast<double>(support[c]) / n;
      m.precision += w * s.precision;
      m.recall += w * s.recall;
      m.f1 += w * s.f1;
    }
  }
  return m;
}

namespace {

std::map<int, std::vector<std::size_t>> members_by_class(const Labels& y) {
  std::map<int, std::vector<std::size_t>> by;
  for (std::size_t i = 0; i < y.size(); ++i) by[y[i]].push_back(i);
  return by;
}

}  // namespace

std::vector<int> stratified_folds(const Labels& y, int n_folds, std::uint64_t seed) {
  if (n_folds < 2) throw UsageError("stratified_folds: n_folds must be >= 2");
  auto by = members_by_class(y);
  for (const auto& [label, rows] : by)
    if (rows.size() < static_cast<std::size_t>(n_folds))
      throw DataError("class " + std::to_string(label) + " has " + std::to_string(rows.size()) +
                      " members, fewer than " + std::to_string(n_folds) + " folds");
  std::vector<int> fold(y.size(), -1);
  std::size_t offset = 0;
  for (auto& [label, rows] : by) {
    Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(label)}));
    rng.shuffle(rows.begin(), rows.end());
    for (std::size_t k = 0; k < rows.size(); ++k)
      fold[rows[k]] = static_cast<int>((offset + k) % static_cast<std::size_t>(n_folds));
    offset += rows.size();
  }
  return fold;
}

std::vector<int> stratified_holdout(const Labels& y, double test_fraction, std::uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) throw UsageError("holdout fraction must be in (0, 1)");
  auto by = members_by_class(y);
  std::vector<int> test(y.size(), 0);
  for (auto& [label, rows] : by) {
    if (rows.size() < 2) throw DataError("class " + std::to_string(label) + " has fewer than 2 members");
    Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(label)}));
    rng.shuffle(rows.begin(), rows.end());
    auto n_test = static_cast<std::size_t>(std::llround(test_fraction * static_cast<double>(rows.size())));
    n_test = std::clamp<std::size_t>(n_test, 1, rows.size() - 1);
    for (std::size_t k = 0; k < n_test; ++k) test[rows[k]] = 1;
  }
  return test;
}

}  // namespace qcb::eval
