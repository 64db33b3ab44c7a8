#include "qcb/classical/svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qcb/errors.hpp"
#include "qcb/fingerprint.hpp"

namespace qcb::classical {

namespace {

constexpr double kTau = 1e-12;

// C-SVC dual on the rows `idx` of K with targets ys (+1/-1): maximal-violating
// pair selection with second-order working-set choice.
BinarySvm solve_binary(const Matrix& K, const std::vector<std::size_t>& idx, const std::vector<int>& ys,
                       const SvmParams& p) {
  const std::size_t m = idx.size();
  const double C = p.C;
  std::vector<double> alpha(m, 0.0), G(m, -1.0);
  auto Kij = [&](std::size_t a, std::size_t b) { return K(idx[a], idx[b]); };
  auto Q = [&](std::size_t a, std::size_t b) { return ys[a] * ys[b] * Kij(a, b); };
  auto upper = [&](std::size_t t) { return alpha[t] >= C; };
  auto lower = [&](std::size_t t) { return alpha[t] <= 0.0; };

  BinarySvm out;
  long iter = 0;
  double gap = 0.0;
  for (; iter < p.max_iter; ++iter) {
    double gmax = -std::numeric_limits<double>::infinity();
    long i = -1;
    for (std::size_t t = 0; t < m; ++t) {
      const bool ok = ys[t] == 1 ? !upper(t) : !lower(t);
      if (ok && -ys[t] * G[t] >= gmax) gmax = -ys[t] * G[t], i = static_cast<long>(t);
    }
    double gmax2 = -std::numeric_limits<double>::infinity();
    long j = -1;
    double obj_min = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < m; ++t) {
      const bool ok = ys[t] == 1 ? !lower(t) : !upper(t);
      if (!ok) continue;
      const double yg = ys[t] * G[t];
      gmax2 = std::max(gmax2, yg);
      const double b = gmax + yg;
      if (i >= 0 && b > 0) {
        const auto ui = static_cast<std::size_t>(i);
        double a = Kij(ui, ui) + Kij(t, t) - 2.0 * Kij(ui, t);
        if (a <= 0) a = kTau;
        const double obj = -(b * b) / a;
        if (obj <= obj_min) obj_min = obj, j = static_cast<long>(t);
      }
    }
    gap = gmax + gmax2;
    if (i < 0 || j < 0 || gap < p.tol) break;

    const auto ui = static_cast<std::size_t>(i), uj = static_cast<std::size_t>(j);
    const double ai = alpha[ui], aj = alpha[uj];
    const double qij = Q(ui, uj);
    if (ys[ui] != ys[uj]) {
      double quad = Kij(ui, ui) + Kij(uj, uj) + 2.0 * qij;
      if (quad <= 0) quad = kTau;
      const double delta = (-G[ui] - G[uj]) / quad;
      const double diff = ai - aj;
      alpha[ui] += delta;
      alpha[uj] += delta;
      if (diff > 0) {
        if (alpha[uj] < 0) alpha[uj] = 0, alpha[ui] = diff;
      } else if (alpha[ui] < 0) {
        alpha[ui] = 0, alpha[uj] = -diff;
      }
      if (diff > 0) {
        if (alpha[ui] > C) alpha[ui] = C, alpha[uj] = C - diff;
      } else if (alpha[uj] > C) {
        alpha[uj] = C, alpha[ui] = C + diff;
      }
    } else {
      double quad = Kij(ui, ui) + Kij(uj, uj) - 2.0 * qij;
      if (quad <= 0) quad = kTau;
      const double delta = (G[ui] - G[uj]) / quad;
      const double sum = ai + aj;
      alpha[ui] -= delta;
      alpha[uj] += delta;
      if (sum > C) {
        if (alpha[ui] > C) alpha[ui] = C, alpha[uj] = sum - C;
      } else if (alpha[uj] < 0) {
        alpha[uj] = 0, alpha[ui] = sum;
      }
      if (sum > C) {
        if (alpha[uj] > C) alpha[uj] = C, alpha[ui] = sum - C;
      } else if (alpha[ui] < 0) {
        alpha[ui] = 0, alpha[uj] = sum;
      }
    }
    const double dai = alpha[ui] - ai, daj = alpha[uj] - aj;
    for (std::size_t t = 0; t < m; ++t) G[t] += Q(ui, t) * dai + Q(uj, t) * daj;
  }

  double ub = std::numeric_limits<double>::infinity(), lb = -ub, sum_free = 0.0;
  std::size_t n_free = 0;
  for (std::size_t t = 0; t < m; ++t) {
    const double yg = ys[t] * G[t];
    if (upper(t)) {
      if (ys[t] == -1) ub = std::min(ub, yg);
      else lb = std::max(lb, yg);
    } else if (lower(t)) {
      if (ys[t] == 1) ub = std::min(ub, yg);
      else lb = std::max(lb, yg);
    } else {
      sum_free += yg;
      ++n_free;
    }
  }
  out.rho = n_free > 0 ? sum_free / static_cast<double>(n_free) : (ub + lb) / 2.0;
  out.kkt_gap = std::max(gap, 0.0);
  out.iterations = iter;
  for (std::size_t t = 0; t < m; ++t) {
    if (alpha[t] > 0.0) {
      out.support.push_back(idx[t]);
      out.alpha.push_back(alpha[t]);
      out.coef.push_back(alpha[t] * ys[t]);
    }
  }
  return out;
}

}  // namespace

KernelSvm KernelSvm::fit(const Matrix& K, const Labels& y, const SvmParams& params) {
  if (K.rows() != K.cols() || K.rows() != y.size()) throw UsageError("KernelSvm: kernel must be n x n for n labels");
  if (!(params.C > 0.0)) throw ConfigError("KernelSvm: C must be > 0");
  KernelSvm svm;
  svm.classes_ = distinct_classes(y);
  if (svm.classes_.size() == 1) {
    svm.single_class_ = true;
    svm.constant_label_ = svm.classes_[0];
    return svm;
  }
  for (std::size_t a = 0; a < svm.classes_.size(); ++a) {
    for (std::size_t b = a + 1; b < svm.classes_.size(); ++b) {
      std::vector<std::size_t> idx;
      std::vector<int> ys;
      for (std::size_t r = 0; r < y.size(); ++r) {
        if (y[r] == svm.classes_[a]) idx.push_back(r), ys.push_back(1);
        else if (y[r] == svm.classes_[b]) idx.push_back(r), ys.push_back(-1);
      }
      BinarySvm m = solve_binary(K, idx, ys, params);
      m.positive_class = svm.classes_[a];
      m.negative_class = svm.classes_[b];
      svm.support_.insert(svm.support_.end(), m.support.begin(), m.support.end());
      svm.machines_.push_back(std::move(m));
    }
  }
  std::sort(svm.support_.begin(), svm.support_.end());
  svm.support_.erase(std::unique(svm.support_.begin(), svm.support_.end()), svm.support_.end());
  return svm;
}

Labels KernelSvm::predict(const Matrix& K_test_support) const {
  if (single_class_) return Labels(K_test_support.rows(), constant_label_);
  if (machines_.empty()) throw UsageError("KernelSvm: not fitted");
  if (K_test_support.cols() != support_.size()) throw UsageError("KernelSvm: kernel columns must match support set");
  // Column of each machine's support vectors inside support_.
  std::vector<std::vector<std::size_t>> cols(machines_.size());
  for (std::size_t m = 0; m < machines_.size(); ++m)
    for (std::size_t s : machines_[m].support)
      cols[m].push_back(static_cast<std::size_t>(std::lower_bound(support_.begin(), support_.end(), s) - support_.begin()));

  Labels out(K_test_support.rows());
  std::vector<int> votes(classes_.size());
  for (std::size_t r = 0; r < K_test_support.rows(); ++r) {
    std::fill(votes.begin(), votes.end(), 0);
    for (std::size_t m = 0; m < machines_.size(); ++m) {
      const auto& mc = machines_[m];
      double f = -mc.rho;
      for (std::size_t s = 0; s < mc.coef.size(); ++s) f += mc.coef[s] * K_test_support(r, cols[m][s]);
      const int winner = f > 0 ? mc.positive_class : mc.negative_class;
      ++votes[static_cast<std::size_t>(std::lower_bound(classes_.begin(), classes_.end(), winner) - classes_.begin())];
    }
    std::size_t best = 0;
    for (std::size_t c = 1; c < votes.size(); ++c)
      if (votes[c] > votes[best]) best = c;
    out[r] = classes_[best];
  }
  return out;
}

std::uint64_t KernelSvm::checksum() const {
  Fingerprint fp;
  fp.add(std::span<const int>(classes_)).add(std::span<const std::size_t>(support_));
  for (const auto& m : machines_) fp.add(std::span<const double>(m.coef)).add(m.rho);
  return fp.value();
}

double rbf_gamma_scale(const Matrix& X) {
  const auto v = X.data();
  if (v.empty()) throw UsageError("rbf_gamma_scale: empty matrix");
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double var = 0.0;
  for (double x : v) var += (x - mean) * (x - mean);
  var /= static_cast<double>(v.size());
  return var > 0.0 ? 1.0 / (static_cast<double>(X.cols()) * var) : 1.0;
}

Matrix rbf_kernel(const Matrix& A, const Matrix& B, double gamma) {
  if (A.cols() != B.cols()) throw UsageError("rbf_kernel: feature count mismatch");
  Matrix K(A.rows(), B.rows());
  for (std::size_t i = 0; i < A.rows(); ++i) {
    const auto a = A.row(i);
    for (std::size_t j = 0; j < B.rows(); ++j) {
      const auto b = B.row(j);
      double d2 = 0.0;
      for (std::size_t c = 0; c < a.size(); ++c) d2 += (a[c] - b[c]) * (a[c] - b[c]);
      K(i, j) = std::exp(-gamma * d2);
    }
  }
  return K;
}

void SvmRbf::fit(const Matrix& X, const Labels& y, std::uint64_t) {
  if (X.rows() != y.size()) throw UsageError("SvmRbf: row/label count mismatch");
  gamma_ = params_.gamma > 0.0 ? params_.gamma : rbf_gamma_scale(X);
  svm_ = KernelSvm::fit(rbf_kernel(X, X, gamma_), y, params_);
  support_rows_ = X.select_rows(svm_.support_indices());
}

Labels SvmRbf::predict(const Matrix& X) const {
  if (svm_.degenerate()) return svm_.predict(Matrix(X.rows(), 0));
  return svm_.predict(rbf_kernel(X, support_rows_, gamma_));
}

std::uint64_t SvmRbf::checksum() const {
  Fingerprint fp;
  fp.add(gamma_).add(svm_.checksum()).add(support_rows_.data());
  return fp.value();
}

std::size_t SvmRbf::fitted_param_count() const {
  std::size_t n = support_rows_.data().size() + 1;
  for (const auto& m : svm_.machines()) n += m.coef.size() + 1;
  return n;
}

}  // namespace qcb::classical
