#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "qcb/errors.hpp"

namespace qcb {

/// Dense row-major matrix of doubles. Samples are rows throughout the library.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return data_.empty(); }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  std::vector<double> column(std::size_t c) const;

  std::span<const double> data() const noexcept { return data_; }
  std::span<double> data() noexcept { return data_; }

  /// Rows selected by index, in the given order.
  Matrix select_rows(std::span<const std::size_t> idx) const;
  /// First `n` columns.
  Matrix left_columns(std::size_t n) const;
  Matrix select_columns(std::span<const std::size_t> idx) const;

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

using Labels = std::vector<int>;

Labels select_labels(const Labels& y, std::span<const std::size_t> idx);

}  // namespace qcb
