#pragma once

#include <memory>
#include <string>

#include "qcb/classical/classifier.hpp"
#include "qcb/classical/logistic.hpp"
#include "qcb/classical/mutual_info.hpp"
#include "qcb/classical/preprocess.hpp"
#include "qcb/classical/svm.hpp"
#include "qcb/classical/tree.hpp"

namespace qcb::classical {

enum class BaselineKind { RANDOM_FOREST, DECISION_TREE, LOGISTIC_REGRESSION, SVM_RBF };

std::string to_string(BaselineKind k);

struct BaselineParams {
  ForestParams forest;
  TreeParams tree;
  LogisticParams logistic;
  SvmParams svm;
};

/// Unfitted baseline with the given hyperparameters.
std::unique_ptr<Classifier> make_baseline(BaselineKind kind, const BaselineParams& params = {});

/// Z-scores inputs with statistics from the training rows, then defers to
/// the wrapped model.
class Standardized final : public Classifier {
 public:
  explicit Standardized(std::unique_ptr<Classifier> inner) : inner_(std::move(inner)) {}

  void fit(const Matrix& X, const Labels& y, std::uint64_t seed) override;
  Labels predict(const Matrix& X) const override;
  std::uint64_t checksum() const override;
  std::size_t fitted_param_count() const override;
  bool degenerate() const override { return inner_->degenerate(); }

  const Classifier& inner() const { return *inner_; }

 private:
  std::unique_ptr<Classifier> inner_;
  ScalerState scaler_;
};

}  // namespace qcb::classical
