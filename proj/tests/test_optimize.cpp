#include <doctest.h>

#include <cmath>
#include <limits>
#include <algorithm>
#include <set>

#include "qcb/errors.hpp"
#include "qcb/optimize.hpp"

using namespace qcb::optimize;

TEST_CASE("minimizes a convex quadratic") {
  const LossFn f = [](std::span<const double> x) { return (x[0] - 1) * (x[0] - 1) + 2 * (x[1] + 0.5) * (x[1] + 0.5); };
  OptBudget b;
  b.max_evals = 400;
  b.tolerance = 1e-8;
  const std::vector<double> x0{3.0, 3.0};
  const auto r = minimize(f, x0, b);
  CHECK(r.status == OptStatus::Converged);
  CHECK(r.best_params[0] == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(r.best_params[1] == doctest::Approx(-0.5).epsilon(1e-3));
}

TEST_CASE("budget counts distinct evaluations") {
  int calls = 0;
  std::set<std::vector<double>> seen;
  const LossFn f = [&](std::span<const double> x) {
    ++calls;
    seen.emplace(x.begin(), x.end());
    return std::sin(3 * x[0]) + std::cos(2 * x[1]) + 0.1 * x[2] * x[2];
  };
  OptBudget b;
  b.max_evals = 37;
  b.tolerance = 1e-300;
  const std::vector<double> x0{0.2, 0.1, 0.4};
  const auto r = minimize(f, x0, b);
  CHECK(r.n_evals <= 37);
  CHECK(r.status == OptStatus::BudgetExhausted);
  CHECK(calls == r.n_evals);
  CHECK(static_cast<int>(seen.size()) == calls);
  CHECK(static_cast<int>(r.trace.size()) == r.n_evals);
}

TEST_CASE("best loss is the minimum of the trace") {
  const LossFn f = [](std::span<const double> x) { return std::abs(x[0] - 0.3) + std::abs(x[1]); };
  const std::vector<double> x0{2.0, -1.0};
  const auto r = minimize(f, x0, {});
  double lo = std::numeric_limits<double>::infinity();
  for (const auto& t : r.trace) lo = std::min(lo, t.loss);
  CHECK(r.best_loss == lo);
  CHECK(f(r.best_params) == r.best_loss);
}

TEST_CASE("deterministic") {
  const LossFn f = [](std::span<const double> x) { return std::cos(x[0]) * std::sin(x[1]) + 0.01 * x[0]; };
  const auto x0 = random_init(2, 3);
  const auto a = minimize(f, x0, {});
  const auto b = minimize(f, x0, {});
  CHECK(a.best_params == b.best_params);
  CHECK(a.n_evals == b.n_evals);
}

TEST_CASE("non-finite losses") {
  const LossFn nan = [](std::span<const double>) { return std::numeric_limits<double>::quiet_NaN(); };
  const std::vector<double> x0{0.0, 0.0};
  OptBudget b;
  b.max_evals = 20;
  const auto r = minimize(nan, x0, b);
  CHECK(r.status == OptStatus::AllNonFinite);
  CHECK(std::isinf(r.best_loss));

  const LossFn wall = [](std::span<const double> x) {
    return x[0] < 0 ? std::numeric_limits<double>::infinity() : (x[0] - 1) * (x[0] - 1) + x[1] * x[1];
  };
  const auto w = minimize(wall, std::vector<double>{0.5, 0.5}, {});
  CHECK(std::isfinite(w.best_loss));
  CHECK(w.best_params[0] >= 0.0);
}

TEST_CASE("ties go to the lexicographically smaller point") {
  std::vector<std::vector<double>> seen;
  const LossFn flat = [&](std::span<const double> x) {
    seen.emplace_back(x.begin(), x.end());
    return 1.0;
  };
  const std::vector<double> x0{0.0, 0.0};
  const auto r = minimize(flat, x0, {});
  CHECK(r.best_params == *std::min_element(seen.begin(), seen.end()));
}

TEST_CASE("budget validation") {
  OptBudget b;
  b.max_evals = 0;
  CHECK_THROWS(b.validate());
  b = {};
  b.initial_step = 0;
  CHECK_THROWS(b.validate());
}

TEST_CASE("random_init range and reproducibility") {
  const auto a = random_init(50, 9), b = random_init(50, 9), c = random_init(50, 10);
  CHECK(a == b);
  CHECK(a != c);
  for (double v : a) {
    CHECK(v >= 0.0);
    CHECK(v < 2 * M_PI);
  }
}
