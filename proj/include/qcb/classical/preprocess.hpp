#pragma once

#include <cstdint>
#include <vector>

#include "qcb/matrix.hpp"

namespace qcb::classical {

struct PcaTransform {
  /// n_components x n_features, orthonormal rows.
  Matrix components;
  /// All covariance eigenvalues, descending.
  std::vector<double> eigenvalues;
  std::vector<double> mean;
  /// Ratio for each retained component.
  std::vector<double> explained_variance_ratio;
  /// Retained components explain at least 95% of the variance.
  bool meets_variance_target = false;
  /// Covariance rank was below the requested component count.
  bool rank_deficient = false;

  std::uint64_t checksum() const;
};

/// Eigendecomposition of the sample covariance. Component signs are fixed so
/// the largest-magnitude loading is positive.
PcaTransform fit_pca(const Matrix& X, int n_components);
Matrix pca_transform(const PcaTransform& t, const Matrix& X);

enum class ScalerKind { ZSCORE, ANGLE };

struct ScalerState {
  ScalerKind kind = ScalerKind::ZSCORE;
  /// ZSCORE: mean and population std. ANGLE: min and max.
  std::vector<double> a;
  std::vector<double> b;
  std::vector<bool> degenerate;

  std::uint64_t checksum() const;
};

/// ZSCORE maps to zero mean / unit variance; ANGLE min-max maps to [0, pi]
/// with out-of-range values clamped. Constant columns map to 0 and pi/2.
ScalerState fit_scaler(ScalerKind kind, const Matrix& X);
Matrix apply_scaler(const ScalerState& s, const Matrix& X);

}  // namespace qcb::classical
