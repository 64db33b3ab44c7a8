#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracle.hpp"
#include "qcb/circuits.hpp"
#include "qcb/errors.hpp"
#include "qcb/rng.hpp"

using namespace qcb;
using namespace qcb::circuits;

namespace {

std::vector<double> tied_vector(Rng& rng, std::size_t n) {
  std::vector<double> v(n);
  for (auto& x : v) x = static_cast<double>(rng.below(6));  // many ties
  return v;
}

}  // namespace

TEST_CASE("average ranks") {
  const std::vector<double> v{3.0, 1.0, 3.0, 2.0};
  const auto r = average_ranks(v);
  CHECK(r == std::vector<double>{3.5, 1.0, 3.5, 2.0});
}

TEST_CASE("spearman equals rank-then-pearson") {
  Rng rng(5);
  for (int t = 0; t < 100; ++t) {
    const auto x = tied_vector(rng, 20), y = tied_vector(rng, 20);
    const auto s = spearman(x, y);
    if (s.degenerate) continue;
    CHECK(std::abs(s.rho - oracle::pearson(oracle::count_ranks(x), oracle::count_ranks(y))) < 1e-12);
  }
}

TEST_CASE("spearman edge cases") {
  const std::vector<double> a{1, 2, 3, 4}, b{10, 20, 30, 40}, c{4, 3, 2, 1}, k{5, 5, 5, 5};
  CHECK(spearman(a, b).rho == doctest::Approx(1.0));
  CHECK(spearman(a, c).rho == doctest::Approx(-1.0));
  const auto d = spearman(a, k);
  CHECK(d.degenerate);
  CHECK(d.rho == 0.0);
  CHECK_THROWS_AS(spearman(a, std::vector<double>{1, 2}), UsageError);
  CHECK_THROWS_AS(spearman(std::vector<double>{1}, std::vector<double>{1}), UsageError);
}

TEST_CASE("spearman is invariant under monotone transforms") {
  Rng rng(9);
  std::vector<double> x(30), y(30), ex(30);
  for (std::size_t i = 0; i < 30; ++i) {
    x[i] = rng.normal();
    y[i] = x[i] + rng.normal();
    ex[i] = std::exp(3.0 * x[i]);
  }
  CHECK(spearman(x, y).rho == doctest::Approx(spearman(ex, y).rho).epsilon(1e-12));
}

TEST_CASE("correlation graph matches a brute-force threshold scan") {
  Rng rng(21);
  for (int t = 0; t < 10; ++t) {
    Matrix X(40, 6);
    for (std::size_t r = 0; r < 40; ++r) {
      const double base = rng.normal();
      for (std::size_t c = 0; c < 6; ++c) X(r, c) = (c % 2 ? base : 0.0) + rng.normal() * (0.3 + 0.4 * static_cast<double>(c));
    }
    const auto g = build_correlation_graph(X, 0.5);
    std::vector<std::pair<int, int>> brute;
    for (int i = 0; i < 6; ++i)
      for (int j = i + 1; j < 6; ++j) {
        const double rho = oracle::pearson(oracle::count_ranks(X.column(static_cast<std::size_t>(i))),
                                           oracle::count_ranks(X.column(static_cast<std::size_t>(j))));
        if (std::abs(rho) > 0.5) brute.emplace_back(i, j);
      }
    std::vector<std::pair<int, int>> got;
    for (const auto& p : g.pairs) got.emplace_back(p.i, p.j);
    std::sort(got.begin(), got.end());
    CHECK(got == brute);
    for (std::size_t k = 1; k < g.pairs.size(); ++k) CHECK(std::abs(g.pairs[k - 1].rho) >= std::abs(g.pairs[k].rho));
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) CHECK(g.rho(i, j) == g.rho(j, i));
  }
}

TEST_CASE("strict threshold excludes |rho| == threshold") {
  // Ranks 1..4 against 1,2,4,3 give rho = 0.8.
  Matrix X{{1, 1}, {2, 2}, {3, 4}, {4, 3}};
  CHECK(build_correlation_graph(X, 0.8).pairs.empty());
  CHECK(build_correlation_graph(X, 0.79).pairs.size() == 1);
}

TEST_CASE("parameter counts") {
  CHECK(param_count({Family::VQC, 4, 2, std::nullopt}) == 8);
  CHECK(param_count({Family::VQC, 6, 3, std::nullopt}) == 18);
  CHECK(param_count({Family::QAOA, 4, 2, std::nullopt}) == 16);
  CHECK(param_count({Family::QAOA, 6, 3, std::nullopt}) == 36);
  CHECK(param_count({Family::FEATURE_MAP, 4, 0, std::nullopt}) == 0);
}

TEST_CASE("config validation") {
  CHECK_THROWS_AS(CircuitConfig({Family::VQC, 0, 1, std::nullopt}).validate(), ConfigError);
  CHECK_THROWS_AS(CircuitConfig({Family::VQC, 13, 1, std::nullopt}).validate(), ConfigError);
  CHECK_THROWS_AS(CircuitConfig({Family::QAOA, 4, 0, std::nullopt}).validate(), ConfigError);
}

TEST_CASE("VQC structure") {
  CircuitConfig cfg{Family::VQC, 4, 2, std::nullopt};
  const std::vector<double> x(4, 0.1), th(8, 0.2);
  const auto gates = build_vqc_circuit(cfg, x, th);
  // 4 encoding + 2 * (4 rotations + 3 ladder CNOTs)
  CHECK(circuit_depth(gates) == 18);
  CHECK_THROWS_AS(build_vqc_circuit(cfg, x, std::vector<double>(7)), UsageError);
  CHECK_THROWS_AS(build_vqc_circuit(cfg, std::vector<double>(3), th), UsageError);

  Matrix X{{1, 2, 0, 5}, {2, 4, 1, 3}, {3, 6, 0, 1}, {4, 8, 1, 2}};
  cfg.correlation = build_correlation_graph(X);
  const auto pairs = vqc_entangling_pairs(cfg);
  REQUIRE(!pairs.empty());
  CHECK(pairs.front() == std::pair<int, int>{0, 1});
  for (auto [a, b] : pairs) CHECK(std::abs(cfg.correlation->rho(a, b)) > 0.5);
}

TEST_CASE("single-qubit VQC feature is cos(x) at zero angles") {
  CircuitConfig cfg{Family::VQC, 1, 1, std::nullopt};
  Rng rng(1);
  for (int k = 0; k < 100; ++k) {
    const double x = rng.uniform(-std::numbers::pi, std::numbers::pi);
    const std::vector<double> xv{x}, th{0.0};
    const auto s = qsim::run_circuit(qsim::init_zero(1), build_vqc_circuit(cfg, xv, th));
    CHECK(std::abs(qsim::expectation_z(s, 0) - std::cos(x)) < 1e-12);
  }
}

TEST_CASE("QAOA circuit matches oracle and vanishing angles leave |+>") {
  CircuitConfig cfg{Family::QAOA, 3, 2, std::nullopt};
  CostHamiltonian h;
  h.zz_terms = {{0, 2, 0.7}, {1, 2, -0.6}};
  h.z_terms = {{0, 0.3}, {1, 1.2}, {2, 2.0}};
  Rng rng(4);
  std::vector<double> g(6), b(6);
  for (auto& v : g) v = rng.uniform(-2, 2);
  for (auto& v : b) v = rng.uniform(-2, 2);
  const auto gates = build_qaoa_circuit(cfg, h, g, b);
  CHECK(gates.size() == 2 * (2 + 3 + 3));
  CHECK(gates[0].angle == doctest::Approx(g[0] * 0.7));
  CHECK(gates[1].angle == doctest::Approx(g[1] * -0.6));
  const auto sim = qsim::run_circuit(qsim::init_plus(3), gates);
  CHECK(oracle::phase_aligned_error(oracle::run(gates, oracle::plus_state(3), 3), sim.amplitudes()) < 1e-12);

  const std::vector<double> zero(6, 0.0);
  const auto id = qsim::run_circuit(qsim::init_plus(3), build_qaoa_circuit(cfg, h, zero, zero));
  for (int q = 0; q < 3; ++q) {
    CHECK(qsim::expectation_z(id, q) == doctest::Approx(0.0));
    CHECK(qsim::expectation_x(id, q) == doctest::Approx(1.0));
  }
  CostHamiltonian bad = h;
  bad.zz_terms.push_back({1, 1, 0.9});
  CHECK_THROWS_AS(build_qaoa_circuit(cfg, bad, g, b), UsageError);
}

TEST_CASE("cost Hamiltonian mirrors the graph within the register") {
  CorrelationGraph g;
  g.n_features = 5;
  g.pairs = {{0, 4, 0.9}, {1, 2, -0.7}, {2, 3, 0.6}};
  const std::vector<double> w{0.1, 0.2, 0.3};
  const auto h = make_cost_hamiltonian(&g, 3, w);
  REQUIRE(h.zz_terms.size() == 1);
  CHECK(h.zz_terms[0].i == 1);
  CHECK(h.zz_terms[0].weight == -0.7);
  CHECK(h.z_terms.size() == 3);
  CHECK_THROWS_AS(make_cost_hamiltonian(&g, 4, w), UsageError);
}

TEST_CASE("feature map kernel on one qubit is cos^2 of the difference") {
  Rng rng(2);
  for (int k = 0; k < 100; ++k) {
    const std::vector<double> a{rng.uniform(0, 3)}, b{rng.uniform(0, 3)};
    const auto sa = qsim::run_circuit(qsim::init_zero(1), build_feature_map(a));
    const auto sb = qsim::run_circuit(qsim::init_zero(1), build_feature_map(b));
    const double c = std::cos(a[0] - b[0]);
    CHECK(std::abs(qsim::overlap_sq(sa, sb) - c * c) < 1e-12);
  }
}

TEST_CASE("Haar KL on Haar-distributed fidelities is small") {
  // Inverse-CDF sampling of the Haar fidelity law for N = 16.
  Rng rng(8);
  std::vector<double> f(20000);
  for (auto& v : f) v = 1.0 - std::pow(1.0 - rng.uniform(), 1.0 / 15.0);
  CHECK(fidelity_kl_to_haar(f, 4) < 0.01);
  std::vector<double> ones(100, 1.0);
  CHECK(fidelity_kl_to_haar(ones, 4) > 5.0);
}

TEST_CASE("expressibility grows with layers and is schedule independent") {
  CircuitConfig cfg{Family::VQC, 4, 1, std::nullopt};
  std::vector<double> scores;
  for (int l = 1; l <= 3; ++l) {
    cfg.layers = l;
    const auto par = expressibility(cfg, 2000, 0, true);
    const auto ser = expressibility(cfg, 2000, 0, false);
    CHECK(par.kl_divergence == ser.kl_divergence);
    CHECK(par.score > 0.0);
    CHECK(par.score <= 1.0);
    scores.push_back(par.score);
  }
  CHECK(scores[0] < scores[1]);
  CHECK(scores[1] < scores[2]);
  CHECK(expressibility(cfg, 50, 0).low_precision);
  CHECK_THROWS_AS(expressibility({Family::QAOA, 4, 1, std::nullopt}, 10, 0), ConfigError);
}
