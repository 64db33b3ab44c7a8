#pragma once

#include <stdexcept>
#include <string>

namespace qcb {

/// Invalid configuration values (qubit counts, layer counts, budgets).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Caller misuse: mismatched dimensions, bad indices.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed or inconsistent input data. Carries the location when known.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what, long row = -1, std::string column = {})
      : std::runtime_error(what), row_(row), column_(std::move(column)) {}

  long row() const noexcept { return row_; }
  const std::string& column() const noexcept { return column_; }

 private:
  long row_;
  std::string column_;
};

}  // namespace qcb
