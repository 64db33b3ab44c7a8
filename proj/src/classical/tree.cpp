#include "qcb/classical/tree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "qcb/errors.hpp"

namespace qcb::classical {

namespace {

int argmax_label(const std::vector<int>& classes, const std::vector<std::size_t>& counts) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < counts.size(); ++k)
    if (counts[k] > counts[best]) best = k;
  return classes[best];
}

std::size_t class_index(const std::vector<int>& classes, int label) {
  return static_cast<std::size_t>(std::lower_bound(classes.begin(), classes.end(), label) - classes.begin());
}

double gini(const std::vector<std::size_t>& counts, std::size_t n) {
  if (n == 0) return 0.0;
  double s = 0.0;
  for (std::size_t c : counts) {
    const double p = static_cast<double>(c) / static_cast<double>(n);
    s += p * p;
  }
  return 1.0 - s;
}

}  // namespace

void DecisionTree::fit(const Matrix& X, const Labels& y, std::uint64_t seed) {
  std::vector<std::size_t> rows(X.rows());
  std::iota(rows.begin(), rows.end(), 0);
  fit_rows(X, y, rows, seed);
}

void DecisionTree::fit_rows(const Matrix& X, const Labels& y, std::span<const std::size_t> rows, std::uint64_t seed) {
  if (X.rows() != y.size()) throw UsageError("DecisionTree: row/label count mismatch");
  if (rows.empty()) throw UsageError("DecisionTree: no training rows");
  if (params_.max_depth < 0) throw ConfigError("DecisionTree: max_depth must be >= 0");
  Labels sub;
  sub.reserve(rows.size());
  for (std::size_t r : rows) sub.push_back(y.at(r));
  classes_ = distinct_classes(sub);
  single_class_ = classes_.size() == 1;
  nodes_.clear();
  std::vector<std::size_t> work(rows.begin(), rows.end());
  Rng rng(seed);
  grow(X, y, work, 0, work.size(), 0, rng);
}

int DecisionTree::grow(const Matrix& X, const Labels& y, std::vector<std::size_t>& rows, std::size_t begin,
                       std::size_t end, int depth, Rng& rng) {
  const std::size_t m = end - begin;
  const std::size_t k = classes_.size();
  std::vector<std::size_t> counts(k, 0);
  for (std::size_t p = begin; p < end; ++p) ++counts[class_index(classes_, y[rows[p]])];

  const int id = static_cast<int>(nodes_.size());
  nodes_.push_back({-1, 0.0, -1, -1, argmax_label(classes_, counts), depth});

  const bool pure = std::count_if(counts.begin(), counts.end(), [](std::size_t c) { return c > 0; }) <= 1;
  if (pure || depth >= params_.max_depth || m < static_cast<std::size_t>(std::max(2, params_.min_samples_split)))
    return id;

  const std::size_t d = X.cols();
  std::vector<std::size_t> features(d);
  std::iota(features.begin(), features.end(), 0);
  std::size_t mtry = d;
  if (params_.max_features > 0 && static_cast<std::size_t>(params_.max_features) < d) {
    rng.shuffle(features.begin(), features.end());
    mtry = static_cast<std::size_t>(params_.max_features);
  }

  double best_impurity = std::numeric_limits<double>::infinity();
  int best_feature = -1;
  double best_threshold = 0.0;
  std::vector<std::pair<double, std::size_t>> vals(m);
  std::vector<std::size_t> left(k), right(k);
  for (std::size_t fi = 0; fi < d; ++fi) {
    // Past the sampled subset, keep looking only until some valid split exists.
    if (fi >= mtry && best_feature >= 0) break;
    const std::size_t f = features[fi];
    for (std::size_t p = 0; p < m; ++p) {
      const std::size_t r = rows[begin + p];
      vals[p] = {X(r, f), class_index(classes_, y[r])};
    }
    std::sort(vals.begin(), vals.end());
    std::fill(left.begin(), left.end(), 0);
    for (std::size_t p = 0; p + 1 < m; ++p) {
      ++left[vals[p].second];
      if (!(vals[p].first < vals[p + 1].first)) continue;
      const std::size_t nl = p + 1, nr = m - nl;
      for (std::size_t c = 0; c < k; ++c) right[c] = counts[c] - left[c];
      const double imp = (static_cast<double>(nl) * gini(left, nl) + static_cast<double>(nr) * gini(right, nr)) /
                         static_cast<double>(m);
      if (imp < best_impurity) {
        best_impurity = imp;
        best_feature = static_cast<int>(f);
        best_threshold = 0.5 * (vals[p].first + vals[p + 1].first);
        // Midpoint can round onto the upper value for adjacent doubles.
        if (!(best_threshold < vals[p + 1].first)) best_threshold = vals[p].first;
      }
    }
  }
  if (best_feature < 0) return id;

  const auto f = static_cast<std::size_t>(best_feature);
  const auto mid = std::stable_partition(rows.begin() + static_cast<long>(begin), rows.begin() + static_cast<long>(end),
                                         [&](std::size_t r) { return X(r, f) <= best_threshold; });
  const auto split = static_cast<std::size_t>(mid - rows.begin());
  nodes_[static_cast<std::size_t>(id)].feature = best_feature;
  nodes_[static_cast<std::size_t>(id)].threshold = best_threshold;
  const int l = grow(X, y, rows, begin, split, depth + 1, rng);
  const int r = grow(X, y, rows, split, end, depth + 1, rng);
  nodes_[static_cast<std::size_t>(id)].left = l;
  nodes_[static_cast<std::size_t>(id)].right = r;
  return id;
}

int DecisionTree::predict_row(std::span<const double> x) const {
  if (nodes_.empty()) throw UsageError("DecisionTree: not fitted");
  std::size_t at = 0;
  while (nodes_[at].feature >= 0) {
    const auto& n = nodes_[at];
    at = static_cast<std::size_t>(x[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left : n.right);
  }
  return nodes_[at].label;
}

Labels DecisionTree::predict(const Matrix& X) const {
  Labels out(X.rows());
  for (std::size_t r = 0; r < X.rows(); ++r) out[r] = predict_row(X.row(r));
  return out;
}

void DecisionTree::add_to(Fingerprint& fp) const {
  fp.add(nodes_.size());
  for (const auto& n : nodes_) fp.add(n.feature).add(n.threshold).add(n.left).add(n.right).add(n.label);
}

std::uint64_t DecisionTree::checksum() const {
  Fingerprint fp;
  add_to(fp);
  return fp.value();
}

int DecisionTree::depth() const {
  int d = 0;
  for (const auto& n : nodes_) d = std::max(d, n.depth);
  return d;
}

void RandomForest::fit(const Matrix& X, const Labels& y, std::uint64_t seed) {
  if (X.rows() != y.size()) throw UsageError("RandomForest: row/label count mismatch");
  if (params_.n_trees < 1) throw ConfigError("RandomForest: n_trees must be >= 1");
  classes_ = distinct_classes(y);
  single_class_ = classes_.size() == 1;
  const std::size_t n = X.rows();
  const int mtry = params_.max_features > 0
                       ? params_.max_features
                       : static_cast<int>(std::ceil(std::sqrt(static_cast<double>(X.cols()))));
  trees_.assign(static_cast<std::size_t>(params_.n_trees), DecisionTree({params_.max_depth, 2, mtry}));

#pragma omp parallel for schedule(dynamic)
  for (int t = 0; t < params_.n_trees; ++t) {
    Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(t), 0}));
    std::vector<std::size_t> rows(n);
    for (auto& r : rows) r = static_cast<std::size_t>(rng.below(n));
    trees_[static_cast<std::size_t>(t)].fit_rows(X, y, rows, derive_seed(seed, {static_cast<std::uint64_t>(t), 1}));
  }
}

Labels RandomForest::predict(const Matrix& X) const {
  if (trees_.empty()) throw UsageError("RandomForest: not fitted");
  Labels out(X.rows());
  std::vector<std::size_t> votes(classes_.size());
  for (std::size_t r = 0; r < X.rows(); ++r) {
    std::fill(votes.begin(), votes.end(), 0);
    for (const auto& t : trees_) ++votes[class_index(classes_, t.predict_row(X.row(r)))];
    out[r] = argmax_label(classes_, votes);
  }
  return out;
}

std::uint64_t RandomForest::checksum() const {
  Fingerprint fp;
  for (const auto& t : trees_) t.add_to(fp);
  return fp.value();
}

std::size_t RandomForest::fitted_param_count() const {
  std::size_t s = 0;
  for (const auto& t : trees_) s += t.fitted_param_count();
  return s;
}

}  // namespace qcb::classical
