#pragma once

#include <cstdint>
#include <vector>

#include "qcb/classical/classifier.hpp"

namespace qcb::classical {

struct LogisticParams {
  double C = 1.0;
  int max_iter = 1000;
  double grad_tol = 1e-5;
};

/// Multinomial softmax regression minimizing
///   mean cross-entropy + ||W||^2 / (2 C n)   (bias unpenalized)
/// by gradient descent with Armijo backtracking.
class LogisticRegression final : public Classifier {
 public:
  explicit LogisticRegression(LogisticParams p = {}) : params_(p) {}

  void fit(const Matrix& X, const Labels& y, std::uint64_t seed) override;
  Labels predict(const Matrix& X) const override;
  std::uint64_t checksum() const override;
  std::size_t fitted_param_count() const override { return weights_.size(); }
  bool degenerate() const override { return single_class_; }

  /// Objective after each accepted step, starting from the initial point.
  const std::vector<double>& loss_trace() const { return loss_trace_; }
  int iterations() const { return iterations_; }
  bool converged() const { return converged_; }

 private:
  LogisticParams params_;
  std::vector<int> classes_;
  std::size_t n_features_ = 0;
  /// K x (d + 1), bias last.
  std::vector<double> weights_;
  std::vector<double> loss_trace_;
  int iterations_ = 0;
  bool converged_ = false;
  bool single_class_ = false;
};

}  // namespace qcb::classical
