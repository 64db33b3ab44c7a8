#include "qcb/classical/logistic.hpp"

#include <algorithm>
#include <cmath>

#include "qcb/errors.hpp"
#include "qcb/fingerprint.hpp"

namespace qcb::classical {

namespace {

struct Problem {
  const Matrix& X;
  std::vector<std::size_t> target;  // class index per row
  std::size_t k;
  double l2;  // coefficient on ||W||^2 (bias excluded)

  std::size_t stride() const { return X.cols() + 1; }

  // Objective; fills grad when non-null.
  double eval(const std::vector<double>& w, std::vector<double>* grad) const {
    const std::size_t n = X.rows(), d = X.cols(), s = stride();
    if (grad) std::fill(grad->begin(), grad->end(), 0.0);
    std::vector<double> z(k);
    double loss = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      const auto x = X.row(r);
      double zmax = -1e300;
      for (std::size_t c = 0; c < k; ++c) {
        double v = w[c * s + d];
        for (std::size_t j = 0; j < d; ++j) v += w[c * s + j] * x[j];
        z[c] = v;
        zmax = std::max(zmax, v);
      }
      double sum = 0.0;
      for (std::size_t c = 0; c < k; ++c) sum += std::exp(z[c] - zmax);
      const double lse = zmax + std::log(sum);
      loss += lse - z[target[r]];
      if (grad) {
        for (std::size_t c = 0; c < k; ++c) {
          const double g = std::exp(z[c] - lse) - (c == target[r] ? 1.0 : 0.0);
          for (std::size_t j = 0; j < d; ++j) (*grad)[c * s + j] += g * x[j];
          (*grad)[c * s + d] += g;
        }
      }
    }
    const double inv_n = 1.0 / static_cast<double>(n);
    loss *= inv_n;
    double reg = 0.0;
    for (std::size_t c = 0; c < k; ++c)
      for (std::size_t j = 0; j < d; ++j) reg += w[c * s + j] * w[c * s + j];
    loss += l2 * reg;
    if (grad) {
      for (auto& g : *grad) g *= inv_n;
      for (std::size_t c = 0; c < k; ++c)
        for (std::size_t j = 0; j < d; ++j) (*grad)[c * s + j] += 2.0 * l2 * w[c * s + j];
    }
    return loss;
  }
};

}  // namespace

void LogisticRegression::fit(const Matrix& X, const Labels& y, std::uint64_t) {
  if (X.rows() != y.size()) throw UsageError("LogisticRegression: row/label count mismatch");
  if (!(params_.C > 0.0)) throw ConfigError("LogisticRegression: C must be > 0");
  if (params_.max_iter < 0) throw ConfigError("LogisticRegression: max_iter must be >= 0");
  classes_ = distinct_classes(y);
  single_class_ = classes_.size() == 1;
  n_features_ = X.cols();
  loss_trace_.clear();
  iterations_ = 0;
  converged_ = false;
  const std::size_t k = classes_.size();
  weights_.assign(k * (n_features_ + 1), 0.0);
  if (single_class_) {
    converged_ = true;
    return;
  }

  Problem prob{X, {}, k, 1.0 / (2.0 * params_.C * static_cast<double>(X.rows()))};
  prob.target.reserve(y.size());
  for (int v : y)
    prob.target.push_back(static_cast<std::size_t>(std::lower_bound(classes_.begin(), classes_.end(), v) - classes_.begin()));

  std::vector<double> grad(weights_.size()), trial(weights_.size()), trial_grad(weights_.size());
  double f = prob.eval(weights_, &grad);
  loss_trace_.push_back(f);
  double step = 1.0;
  for (; iterations_ < params_.max_iter; ++iterations_) {
    double gnorm2 = 0.0;
    for (double g : grad) gnorm2 += g * g;
    if (std::sqrt(gnorm2) < params_.grad_tol) {
      converged_ = true;
      break;
    }
    // Armijo backtracking; start from a slightly larger step than last time.
    step = std::min(step * 2.0, 1e4);
    double ft = 0.0;
    for (int halvings = 0;; ++halvings) {
      for (std::size_t i = 0; i < weights_.size(); ++i) trial[i] = weights_[i] - step * grad[i];
      ft = prob.eval(trial, nullptr);
      if (ft <= f - 0.5 * step * gnorm2 || halvings > 60) break;
      step *= 0.5;
    }
    if (!(ft <= f)) break;
    weights_.swap(trial);
    f = prob.eval(weights_, &grad);
    loss_trace_.push_back(f);
  }
}

Labels LogisticRegression::predict(const Matrix& X) const {
  if (classes_.empty()) throw UsageError("LogisticRegression: not fitted");
  if (X.cols() != n_features_) throw UsageError("LogisticRegression: feature count mismatch");
  const std::size_t k = classes_.size(), d = n_features_, s = d + 1;
  Labels out(X.rows());
  for (std::size_t r = 0; r < X.rows(); ++r) {
    const auto x = X.row(r);
    std::size_t best = 0;
    double best_z = -1e300;
    for (std::size_t c = 0; c < k; ++c) {
      double v = weights_[c * s + d];
      for (std::size_t j = 0; j < d; ++j) v += weights_[c * s + j] * x[j];
      if (v > best_z) best_z = v, best = c;
    }
    out[r] = classes_[best];
  }
  return out;
}

std::uint64_t LogisticRegression::checksum() const {
  Fingerprint fp;
  fp.add(std::span<const int>(classes_)).add(std::span<const double>(weights_));
  return fp.value();
}

}  // namespace qcb::classical
