#include "qcb/classical/preprocess.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "qcb/errors.hpp"
#include "qcb/fingerprint.hpp"

namespace qcb::classical {

std::uint64_t PcaTransform::checksum() const {
  Fingerprint fp;
  fp.add(components.data()).add(std::span<const double>(eigenvalues)).add(std::span<const double>(mean));
  return fp.value();
}

PcaTransform fit_pca(const Matrix& X, int n_components) {
  const std::size_t n = X.rows(), d = X.cols();
  if (n < 2) throw UsageError("PCA: need at least two samples");
  if (n_components < 1 || static_cast<std::size_t>(n_components) > std::min(n, d))
    throw UsageError("PCA: n_components must be in [1, min(n_samples, n_features)]");

  PcaTransform t;
  t.mean.assign(d, 0.0);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < d; ++c) t.mean[c] += X(r, c) / static_cast<double>(n);

  Eigen::MatrixXd centered(n, d);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < d; ++c) centered(r, c) = X(r, c) - t.mean[c];
  const Eigen::MatrixXd cov = centered.transpose() * centered / static_cast<double>(n - 1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
  if (eig.info() != Eigen::Success) throw DataError("PCA: eigendecomposition failed");

  // Eigen returns ascending order.
  std::vector<std::size_t> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::reverse(order.begin(), order.end());
  t.eigenvalues.resize(d);
  for (std::size_t k = 0; k < d; ++k) t.eigenvalues[k] = std::max(0.0, eig.eigenvalues()(static_cast<long>(order[k])));
  const double total = std::accumulate(t.eigenvalues.begin(), t.eigenvalues.end(), 0.0);

  const double floor = 1e-12 * std::max(total, 1e-300);
  std::size_t rank = 0;
  while (rank < d && t.eigenvalues[rank] > floor) ++rank;
  std::size_t keep = static_cast<std::size_t>(n_components);
  if (rank < keep) {
    t.rank_deficient = true;
    keep = std::max<std::size_t>(rank, 1);
  }

  t.components = Matrix(keep, d);
  for (std::size_t k = 0; k < keep; ++k) {
    const auto v = eig.eigenvectors().col(static_cast<long>(order[k]));
    std::size_t arg = 0;
    for (std::size_t c = 1; c < d; ++c)
      if (std::abs(v(static_cast<long>(c))) > std::abs(v(static_cast<long>(arg))) + 1e-12) arg = c;
    const double sign = v(static_cast<long>(arg)) < 0 ? -1.0 : 1.0;
    for (std::size_t c = 0; c < d; ++c) t.components(k, c) = sign * v(static_cast<long>(c));
    t.explained_variance_ratio.push_back(total > 0 ? t.eigenvalues[k] / total : 0.0);
  }
  const double kept = std::accumulate(t.explained_variance_ratio.begin(), t.explained_variance_ratio.end(), 0.0);
  t.meets_variance_target = kept >= 0.95;
  return t;
}

Matrix pca_transform(const PcaTransform& t, const Matrix& X) {
  const std::size_t d = t.mean.size();
  if (X.cols() != d) throw UsageError("pca_transform: feature count mismatch");
  const std::size_t k = t.components.rows();
  Matrix out(X.rows(), k);
  std::vector<double> centered(d);
  for (std::size_t r = 0; r < X.rows(); ++r) {
    for (std::size_t c = 0; c < d; ++c) centered[c] = X(r, c) - t.mean[c];
    for (std::size_t j = 0; j < k; ++j) {
      double s = 0.0;
      for (std::size_t c = 0; c < d; ++c) s += t.components(j, c) * centered[c];
      out(r, j) = s;
    }
  }
  return out;
}

std::uint64_t ScalerState::checksum() const {
  Fingerprint fp;
  fp.add(static_cast<int>(kind)).add(std::span<const double>(a)).add(std::span<const double>(b));
  return fp.value();
}

ScalerState fit_scaler(ScalerKind kind, const Matrix& X) {
  if (X.rows() == 0) throw UsageError("fit_scaler: empty matrix");
  const std::size_t n = X.rows(), d = X.cols();
  ScalerState s;
  s.kind = kind;
  s.a.assign(d, 0.0);
  s.b.assign(d, 0.0);
  s.degenerate.assign(d, false);
  for (std::size_t c = 0; c < d; ++c) {
    if (kind == ScalerKind::ZSCORE) {
      double mean = 0.0;
      for (std::size_t r = 0; r < n; ++r) mean += X(r, c);
      mean /= static_cast<double>(n);
      double var = 0.0;
      for (std::size_t r = 0; r < n; ++r) var += (X(r, c) - mean) * (X(r, c) - mean);
      var /= static_cast<double>(n);
      s.a[c] = mean;
      s.b[c] = std::sqrt(var);
      s.degenerate[c] = !(s.b[c] > 1e-12 * std::max(1.0, std::abs(mean)));
    } else {
      double lo = X(0, c), hi = X(0, c);
      for (std::size_t r = 1; r < n; ++r) lo = std::min(lo, X(r, c)), hi = std::max(hi, X(r, c));
      s.a[c] = lo;
      s.b[c] = hi;
      s.degenerate[c] = !(hi > lo);
    }
  }
  return s;
}

Matrix apply_scaler(const ScalerState& s, const Matrix& X) {
  if (X.cols() != s.a.size()) throw UsageError("apply_scaler: feature count mismatch");
  Matrix out(X.rows(), X.cols());
  for (std::size_t r = 0; r < X.rows(); ++r) {
    for (std::size_t c = 0; c < X.cols(); ++c) {
      if (s.kind == ScalerKind::ZSCORE) {
        out(r, c) = s.degenerate[c] ? 0.0 : (X(r, c) - s.a[c]) / s.b[c];
      } else if (s.degenerate[c]) {
        out(r, c) = std::numbers::pi / 2;
      } else {
        const double u = std::clamp((X(r, c) - s.a[c]) / (s.b[c] - s.a[c]), 0.0, 1.0);
        out(r, c) = u * std::numbers::pi;
      }
    }
  }
  return out;
}

}  // namespace qcb::classical
