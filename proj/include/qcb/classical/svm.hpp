#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qcb/classical/classifier.hpp"

namespace qcb::classical {

struct SvmParams {
  double C = 1.0;
  /// RBF width; a non-positive value selects 1 / (d * Var(X)).
  double gamma = 0.0;
  /// Maximal-violating-pair gap at which SMO stops.
  double tol = 1e-3;
  long max_iter = 1000000;
};

/// One binary C-SVC subproblem solved by SMO.
struct BinarySvm {
  int positive_class = 0;
  int negative_class = 0;
  /// Indices into the training set and alpha_i * y_i for each.
  std::vector<std::size_t> support;
  std::vector<double> coef;
  std::vector<double> alpha;
  double rho = 0.0;
  /// Final maximal violation m(alpha) - M(alpha).
  double kkt_gap = 0.0;
  long iterations = 0;
};

/// One-vs-one kernel SVM over a precomputed training kernel. The solver never
/// evaluates a kernel itself, so any symmetric PSD kernel can be supplied.
class KernelSvm {
 public:
  static KernelSvm fit(const Matrix& K, const Labels& y, const SvmParams& params);

  /// Sorted training indices with a nonzero coefficient in some subproblem.
  const std::vector<std::size_t>& support_indices() const { return support_; }

  /// K_test rows are test samples, columns follow support_indices().
  Labels predict(const Matrix& K_test_support) const;

  const std::vector<BinarySvm>& machines() const { return machines_; }
  bool degenerate() const { return single_class_; }
  std::uint64_t checksum() const;

 private:
  std::vector<int> classes_;
  std::vector<BinarySvm> machines_;
  std::vector<std::size_t> support_;
  bool single_class_ = false;
  int constant_label_ = 0;
};

double rbf_gamma_scale(const Matrix& X);
Matrix rbf_kernel(const Matrix& A, const Matrix& B, double gamma);

class SvmRbf final : public Classifier {
 public:
  explicit SvmRbf(SvmParams p = {}) : params_(p) {}

  void fit(const Matrix& X, const Labels& y, std::uint64_t seed) override;
  Labels predict(const Matrix& X) const override;
  std::uint64_t checksum() const override;
  std::size_t fitted_param_count() const override;
  bool degenerate() const override { return svm_.degenerate(); }

  double gamma() const { return gamma_; }
  const KernelSvm& solver() const { return svm_; }

 private:
  SvmParams params_;
  double gamma_ = 0.0;
  Matrix support_rows_;
  KernelSvm svm_;
};

}  // namespace qcb::classical
