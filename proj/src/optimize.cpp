#include "qcb/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <optional>

#include "qcb/errors.hpp"
#include "qcb/rng.hpp"

namespace qcb::optimize {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Vertex {
  std::vector<double> x;
  double f = kInf;
};

bool better(const Vertex& a, const Vertex& b) {
  if (a.f != b.f) return a.f < b.f;
  return std::lexicographical_compare(a.x.begin(), a.x.end(), b.x.begin(), b.x.end());
}

class Evaluator {
 public:
  Evaluator(const LossFn& loss, int max_evals) : loss_(loss), max_evals_(max_evals) {}

  // nullopt once the budget is spent.
  std::optional<double> operator()(const std::vector<double>& x) {
    if (auto it = cache_.find(x); it != cache_.end()) return it->second;
    if (result.n_evals >= max_evals_) return std::nullopt;
    double f = loss_(x);
    if (!std::isfinite(f)) f = kInf;
    ++result.n_evals;
    cache_.emplace(x, f);
    result.trace.push_back({result.n_evals, f});
    const Vertex v{x, f};
    if (result.best_params.empty() || better(v, Vertex{result.best_params, result.best_loss})) {
      result.best_params = x;
      result.best_loss = f;
    }
    return f;
  }

  OptResult result;

 private:
  const LossFn& loss_;
  int max_evals_;
  std::map<std::vector<double>, double> cache_;
};

}  // namespace

void OptBudget::validate() const {
  if (max_evals < 1) throw ConfigError("OptBudget: max_evals must be >= 1");
  if (!(initial_step > 0.0)) throw ConfigError("OptBudget: initial_step must be > 0");
  if (!(tolerance > 0.0)) throw ConfigError("OptBudget: tolerance must be > 0");
}

std::string to_string(OptStatus s) {
  switch (s) {
    case OptStatus::Converged: return "converged";
    case OptStatus::BudgetExhausted: return "budget_exhausted";
    case OptStatus::AllNonFinite: return "all_non_finite";
  }
  return "?";
}

OptResult minimize(const LossFn& loss, std::span<const double> x0, const OptBudget& budget) {
  budget.validate();
  if (x0.empty()) throw UsageError("minimize: empty starting point");
  const std::size_t n = x0.size();
  Evaluator eval(loss, budget.max_evals);

  auto finish = [&](OptStatus status) {
    OptResult r = std::move(eval.result);
    r.status = std::isinf(r.best_loss) && r.best_loss > 0 ? OptStatus::AllNonFinite : status;
    return r;
  };

  std::vector<Vertex> simplex;
  simplex.reserve(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    Vertex v{std::vector<double>(x0.begin(), x0.end())};
    if (k > 0) v.x[k - 1] += budget.initial_step;
    auto f = eval(v.x);
    if (!f) return finish(OptStatus::BudgetExhausted);
    v.f = *f;
    simplex.push_back(std::move(v));
  }

  auto affine = [&](const std::vector<double>& c, const std::vector<double>& x, double t) {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = c[i] + t * (x[i] - c[i]);
    return out;
  };

  for (;;) {
    std::sort(simplex.begin(), simplex.end(), better);
    const Vertex& best = simplex.front();
    Vertex& worst = simplex.back();

    double x_spread = 0.0;
    for (std::size_t k = 1; k <= n; ++k)
      for (std::size_t i = 0; i < n; ++i) x_spread = std::max(x_spread, std::abs(simplex[k].x[i] - best.x[i]));
    const double f_spread = worst.f == best.f ? 0.0 : worst.f - best.f;
    if (f_spread <= budget.tolerance && x_spread <= budget.tolerance) return finish(OptStatus::Converged);

    std::vector<double> centroid(n, 0.0);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i) centroid[i] += simplex[k].x[i] / static_cast<double>(n);

    Vertex reflected{affine(centroid, worst.x, -1.0)};
    auto fr = eval(reflected.x);
    if (!fr) return finish(OptStatus::BudgetExhausted);
    reflected.f = *fr;

    if (better(reflected, best)) {
      Vertex expanded{affine(centroid, worst.x, -2.0)};
      auto fe = eval(expanded.x);
      if (!fe) return finish(OptStatus::BudgetExhausted);
      expanded.f = *fe;
      worst = better(expanded, reflected) ? std::move(expanded) : std::move(reflected);
      continue;
    }
    if (better(reflected, simplex[n - 1])) {
      worst = std::move(reflected);
      continue;
    }

    const bool outside = better(reflected, worst);
    Vertex contracted{affine(centroid, outside ? reflected.x : worst.x, 0.5)};
    auto fc = eval(contracted.x);
    if (!fc) return finish(OptStatus::BudgetExhausted);
    contracted.f = *fc;
    if (better(contracted, outside ? reflected : worst)) {
      worst = std::move(contracted);
      continue;
    }

    for (std::size_t k = 1; k <= n; ++k) {
      simplex[k].x = affine(simplex.front().x, simplex[k].x, 0.5);
      auto fs = eval(simplex[k].x);
      if (!fs) return finish(OptStatus::BudgetExhausted);
      simplex[k].f = *fs;
    }
  }
}

std::vector<double> random_init(int dim, std::uint64_t seed) {
  if (dim < 1) throw UsageError("random_init: dim must be >= 1");
  Rng rng(seed);
  std::vector<double> v(static_cast<std::size_t>(dim));
  for (auto& x : v) {
    x = rng.uniform(0.0, 2.0 * std::numbers::pi);
    if (x >= 2.0 * std::numbers::pi) x = 0.0;
  }
  return v;
}

}  // namespace qcb::optimize
