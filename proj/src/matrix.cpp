#include "qcb/matrix.hpp"

#include <algorithm>

namespace qcb {

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw UsageError("Matrix: ragged initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

std::vector<double> Matrix::column(std::size_t c) const {
  std::vector<double> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

Matrix Matrix::select_rows(std::span<const std::size_t> idx) const {
  Matrix out(idx.size(), cols_);
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (idx[k] >= rows_) throw UsageError("Matrix::select_rows: index out of range");
    const auto src = row(idx[k]);
    std::copy(src.begin(), src.end(), out.row(k).begin());
  }
  return out;
}

Matrix Matrix::left_columns(std::size_t n) const {
  if (n > cols_) throw UsageError("Matrix::left_columns: not enough columns");
  Matrix out(rows_, n);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < n; ++c) out(r, c) = (*this)(r, c);
  return out;
}

Matrix Matrix::select_columns(std::span<const std::size_t> idx) const {
  Matrix out(rows_, idx.size());
  for (std::size_t k = 0; k < idx.size(); ++k)
    if (idx[k] >= cols_) throw UsageError("Matrix::select_columns: index out of range");
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < idx.size(); ++k) out(r, k) = (*this)(r, idx[k]);
  return out;
}

Labels select_labels(const Labels& y, std::span<const std::size_t> idx) {
  Labels out;
  out.reserve(idx.size());
  for (std::size_t i : idx) {
    if (i >= y.size()) throw UsageError("select_labels: index out of range");
    out.push_back(y[i]);
  }
  return out;
}

}  // namespace qcb
