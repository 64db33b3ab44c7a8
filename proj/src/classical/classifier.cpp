#include "qcb/classical.hpp"

#include <algorithm>
#include <map>

#include "qcb/errors.hpp"
#include "qcb/fingerprint.hpp"

namespace qcb::classical {

std::vector<int> distinct_classes(const Labels& y) {
  if (y.empty()) throw UsageError("no labels");
  std::vector<int> c(y.begin(), y.end());
  std::sort(c.begin(), c.end());
  c.erase(std::unique(c.begin(), c.end()), c.end());
  return c;
}

int majority_label(const Labels& y) {
  if (y.empty()) throw UsageError("no labels");
  std::map<int, std::size_t> counts;
  for (int v : y) ++counts[v];
  int best = counts.begin()->first;
  std::size_t best_n = 0;
  for (auto [label, n] : counts)
    if (n > best_n) best = label, best_n = n;
  return best;
}

void MajorityClassifier::fit(const Matrix& X, const Labels& y, std::uint64_t) {
  if (X.rows() != y.size()) throw UsageError("fit: row/label count mismatch");
  label_ = majority_label(y);
  single_class_ = distinct_classes(y).size() == 1;
}

Labels MajorityClassifier::predict(const Matrix& X) const { return Labels(X.rows(), label_); }

std::uint64_t MajorityClassifier::checksum() const { return Fingerprint().add(label_).value(); }

std::string to_string(BaselineKind k) {
  switch (k) {
    case BaselineKind::RANDOM_FOREST: return "RANDOM_FOREST";
    case BaselineKind::DECISION_TREE: return "DECISION_TREE";
    case BaselineKind::LOGISTIC_REGRESSION: return "LOGISTIC_REGRESSION";
    case BaselineKind::SVM_RBF: return "SVM_RBF";
  }
  return "?";
}

std::unique_ptr<Classifier> make_baseline(BaselineKind kind, const BaselineParams& params) {
  switch (kind) {
    case BaselineKind::RANDOM_FOREST: return std::make_unique<RandomForest>(params.forest);
    case BaselineKind::DECISION_TREE: return std::make_unique<DecisionTree>(params.tree);
    case BaselineKind::LOGISTIC_REGRESSION: return std::make_unique<LogisticRegression>(params.logistic);
    case BaselineKind::SVM_RBF: return std::make_unique<SvmRbf>(params.svm);
  }
  throw ConfigError("unknown baseline kind");
}

void Standardized::fit(const Matrix& X, const Labels& y, std::uint64_t seed) {
  scaler_ = fit_scaler(ScalerKind::ZSCORE, X);
  inner_->fit(apply_scaler(scaler_, X), y, seed);
}

Labels Standardized::predict(const Matrix& X) const { return inner_->predict(apply_scaler(scaler_, X)); }

std::uint64_t Standardized::checksum() const {
  Fingerprint fp;
  fp.add(scaler_.checksum()).add(inner_->checksum());
  return fp.value();
}

std::size_t Standardized::fitted_param_count() const {
  return inner_->fitted_param_count() + scaler_.a.size() + scaler_.b.size();
}

}  // namespace qcb::classical
