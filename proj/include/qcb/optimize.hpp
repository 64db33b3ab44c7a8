#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace qcb::optimize {

struct OptBudget {
  /// Distinct loss evaluations, including the initial simplex.
  int max_evals = 150;
  double initial_step = 0.5;
  /// Converged once both the loss spread and the vertex spread (inf-norm
  /// distance from the best vertex) of the simplex fall to this value.
  double tolerance = 1e-4;
  /// Reserved for stochastic engines; Nelder-Mead is deterministic.
  std::uint64_t seed = 0;

  void validate() const;
};

enum class OptStatus { Converged, BudgetExhausted, AllNonFinite };

std::string to_string(OptStatus s);

struct TracePoint {
  int eval = 0;
  double loss = 0.0;
};

struct OptResult {
  std::vector<double> best_params;
  double best_loss = 0.0;
  int n_evals = 0;
  std::vector<TracePoint> trace;
  OptStatus status = OptStatus::Converged;
};

using LossFn = std::function<double(std::span<const double>)>;

/// Nelder-Mead simplex search. Non-finite losses are treated as +inf.
/// Repeated points are served from a cache and do not consume budget.
/// Returns the best point ever evaluated; ties go to the lexicographically
/// smaller parameter vector.
OptResult minimize(const LossFn& loss, std::span<const double> x0, const OptBudget& budget);

/// dim values uniform in [0, 2*pi).
std::vector<double> random_init(int dim, std::uint64_t seed);

}  // namespace qcb::optimize
