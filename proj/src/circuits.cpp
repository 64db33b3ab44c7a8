#include "qcb/circuits.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "qcb/errors.hpp"
#include "qcb/rng.hpp"

namespace qcb::circuits {

std::vector<double> average_ranks(std::span<const double> v) {
  const std::size_t n = v.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(n);
  for (std::size_t start = 0; start < n;) {
    std::size_t end = start + 1;
    while (end < n && v[order[end]] == v[order[start]]) ++end;
    const double r = 0.5 * static_cast<double>(start + end - 1) + 1.0;
    for (std::size_t k = start; k < end; ++k) ranks[order[k]] = r;
    start = end;
  }
  return ranks;
}

SpearmanResult spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw UsageError("spearman: length mismatch");
  if (x.size() < 2) throw UsageError("spearman: need at least two samples");
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  const double n = static_cast<double>(x.size());
  const double mean = (n + 1.0) / 2.0;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t k = 0; k < rx.size(); ++k) {
    const double dx = rx[k] - mean, dy = ry[k] - mean;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return {0.0, true};
  return {std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0), false};
}

std::vector<CorrelationPair> CorrelationGraph::pairs_within(int n_qubits) const {
  std::vector<CorrelationPair> out;
  for (const auto& p : pairs)
    if (p.i < n_qubits && p.j < n_qubits) out.push_back(p);
  return out;
}

CorrelationGraph build_correlation_graph(const Matrix& features, double threshold) {
  if (features.rows() < 2) throw UsageError("correlation graph: need at least two samples");
  if (features.cols() < 2) throw UsageError("correlation graph: need at least two features");
  const std::size_t d = features.cols();
  CorrelationGraph g;
  g.n_features = static_cast<int>(d);
  g.threshold = threshold;
  g.rho = Matrix(d, d);
  g.degenerate_features.assign(d, false);

  std::vector<std::vector<double>> cols(d);
  for (std::size_t c = 0; c < d; ++c) {
    cols[c] = features.column(c);
    const auto [lo, hi] = std::minmax_element(cols[c].begin(), cols[c].end());
    g.degenerate_features[c] = *lo == *hi;
  }
  for (std::size_t i = 0; i < d; ++i) {
    g.rho(i, i) = 1.0;
    for (std::size_t j = i + 1; j < d; ++j) {
      const double r = spearman(cols[i], cols[j]).rho;
      g.rho(i, j) = g.rho(j, i) = r;
      if (std::abs(r) > threshold) g.pairs.push_back({static_cast<int>(i), static_cast<int>(j), r});
    }
  }
  std::stable_sort(g.pairs.begin(), g.pairs.end(),
                   [](const CorrelationPair& a, const CorrelationPair& b) { return std::abs(a.rho) > std::abs(b.rho); });
  return g;
}

std::string to_string(Family f) {
  switch (f) {
    case Family::VQC: return "VQC";
    case Family::QAOA: return "QAOA";
    case Family::FEATURE_MAP: return "FEATURE_MAP";
  }
  return "?";
}

void CircuitConfig::validate() const {
  if (n_qubits < 1 || n_qubits > qsim::kMaxQubits) throw ConfigError("n_qubits out of range");
  if (family != Family::FEATURE_MAP && layers < 1) throw ConfigError("layers must be >= 1");
}

CostHamiltonian make_cost_hamiltonian(const CorrelationGraph* graph, int n_qubits, std::span<const double> z_weights) {
  if (z_weights.size() != static_cast<std::size_t>(n_qubits))
    throw UsageError("cost Hamiltonian: one Z weight per qubit required");
  CostHamiltonian h;
  if (graph)
    for (const auto& p : graph->pairs_within(n_qubits)) h.zz_terms.push_back({p.i, p.j, p.rho});
  for (int i = 0; i < n_qubits; ++i) h.z_terms.push_back({i, z_weights[static_cast<std::size_t>(i)]});
  return h;
}

std::vector<std::pair<int, int>> vqc_entangling_pairs(const CircuitConfig& config) {
  std::vector<std::pair<int, int>> out;
  if (config.correlation)
    for (const auto& p : config.correlation->pairs_within(config.n_qubits)) out.emplace_back(p.i, p.j);
  if (out.empty())
    for (int k = 0; k + 1 < config.n_qubits; ++k) out.emplace_back(k, k + 1);
  return out;
}

GateList build_vqc_circuit(const CircuitConfig& config, std::span<const double> x, std::span<const double> theta) {
  config.validate();
  const auto n = static_cast<std::size_t>(config.n_qubits);
  if (x.size() != n) throw UsageError("VQC: input length must equal n_qubits");
  if (theta.size() != static_cast<std::size_t>(param_count(config))) throw UsageError("VQC: theta length mismatch");

  const auto first_pairs = vqc_entangling_pairs(config);
  GateList gates;
  gates.reserve(n * (1 + config.layers) + first_pairs.size() + (n - 1) * config.layers);
  for (std::size_t j = 0; j < n; ++j) gates.push_back(GateOp::ry(static_cast<int>(j), x[j]));
  for (int l = 0; l < config.layers; ++l) {
    for (std::size_t j = 0; j < n; ++j) gates.push_back(GateOp::ry(static_cast<int>(j), theta[l * n + j]));
    if (l == 0) {
      for (auto [a, b] : first_pairs) gates.push_back(GateOp::cnot(a, b));
    } else {
      for (int k = 0; k + 1 < config.n_qubits; ++k) gates.push_back(GateOp::cnot(k, k + 1));
    }
  }
  return gates;
}

GateList build_qaoa_circuit(const CircuitConfig& config, const CostHamiltonian& h, std::span<const double> gamma,
                            std::span<const double> beta) {
  config.validate();
  const auto n = static_cast<std::size_t>(config.n_qubits);
  const std::size_t expected = n * static_cast<std::size_t>(config.layers);
  if (gamma.size() != expected || beta.size() != expected) throw UsageError("QAOA: gamma/beta length mismatch");
  for (const auto& t : h.zz_terms)
    if (t.i < 0 || t.j < 0 || static_cast<std::size_t>(std::max(t.i, t.j)) >= n || t.i == t.j)
      throw UsageError("QAOA: ZZ term outside register");
  for (const auto& t : h.z_terms)
    if (t.i < 0 || static_cast<std::size_t>(t.i) >= n) throw UsageError("QAOA: Z term outside register");

  GateList gates;
  gates.reserve(static_cast<std::size_t>(config.layers) * (h.zz_terms.size() + h.z_terms.size() + n));
  for (int l = 0; l < config.layers; ++l) {
    const auto g = gamma.subspan(l * n, n);
    const auto b = beta.subspan(l * n, n);
    for (const auto& t : h.zz_terms) gates.push_back(GateOp::zz(t.i, t.j, g[std::min(t.i, t.j)] * t.weight));
    for (const auto& t : h.z_terms) gates.push_back(GateOp::rz(t.i, 2.0 * g[t.i] * t.weight));
    for (std::size_t i = 0; i < n; ++i) gates.push_back(GateOp::x_mixer(static_cast<int>(i), b[i]));
  }
  return gates;
}

GateList build_feature_map(std::span<const double> x) {
  const int n = static_cast<int>(x.size());
  if (n < 1 || n > qsim::kMaxQubits) throw UsageError("feature map: input length must be in [1, 12]");
  GateList gates;
  for (int i = 0; i < n; ++i) gates.push_back(GateOp::h(i));
  for (int i = 0; i < n; ++i) gates.push_back(GateOp::rz(i, 2.0 * x[i]));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) gates.push_back(GateOp::zz(i, j, x[i] * x[j]));
  return gates;
}

int param_count(const CircuitConfig& config) {
  switch (config.family) {
    case Family::VQC: return config.n_qubits * config.layers;
    case Family::QAOA: return 2 * config.n_qubits * config.layers;
    case Family::FEATURE_MAP: return 0;
  }
  return 0;
}

double fidelity_kl_to_haar(std::span<const double> fidelities, int n_qubits, int bins) {
  if (fidelities.empty()) throw UsageError("expressibility: no fidelities");
  std::vector<double> counts(static_cast<std::size_t>(bins), 0.0);
  for (double f : fidelities) {
    auto b = static_cast<long>(std::floor(std::clamp(f, 0.0, 1.0) * bins));
    counts[static_cast<std::size_t>(std::min<long>(b, bins - 1))] += 1.0;
  }
  const double dim = std::ldexp(1.0, n_qubits);
  const double total = static_cast<double>(fidelities.size());
  double kl = 0.0;
  for (int b = 0; b < bins; ++b) {
    const double p = counts[static_cast<std::size_t>(b)] / total;
    if (p == 0.0) continue;
    const double lo = static_cast<double>(b) / bins, hi = static_cast<double>(b + 1) / bins;
    // CDF of the Haar fidelity density (N-1)(1-F)^(N-2) is 1 - (1-F)^(N-1).
    const double q = std::pow(1.0 - lo, dim - 1.0) - std::pow(1.0 - hi, dim - 1.0);
    kl += p * std::log(p / std::max(q, 1e-300));
  }
  return kl;
}

ExpressibilityResult expressibility(const CircuitConfig& config, int n_pairs, std::uint64_t seed, bool parallel) {
  if (config.family != Family::VQC) throw ConfigError("expressibility: VQC family required");
  config.validate();
  if (n_pairs < 1) throw ConfigError("expressibility: n_pairs must be positive");
  const int dim = param_count(config);
  const std::vector<double> x(static_cast<std::size_t>(config.n_qubits), 0.0);
  std::vector<double> fid(static_cast<std::size_t>(n_pairs));

#pragma omp parallel for schedule(static) if (parallel)
  for (int k = 0; k < n_pairs; ++k) {
    Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(k)}));
    std::vector<double> a(static_cast<std::size_t>(dim)), b(static_cast<std::size_t>(dim));
    for (auto& v : a) v = rng.uniform(0.0, 2.0 * std::numbers::pi);
    for (auto& v : b) v = rng.uniform(0.0, 2.0 * std::numbers::pi);
    const auto sa = qsim::run_circuit(qsim::init_zero(config.n_qubits), build_vqc_circuit(config, x, a));
    const auto sb = qsim::run_circuit(qsim::init_zero(config.n_qubits), build_vqc_circuit(config, x, b));
    fid[static_cast<std::size_t>(k)] = qsim::overlap_sq(sa, sb);
  }

  ExpressibilityResult r;
  r.n_pairs = n_pairs;
  r.low_precision = n_pairs < 100;
  r.kl_divergence = fidelity_kl_to_haar(fid, config.n_qubits);
  r.score = 1.0 / (1.0 + r.kl_divergence);
  return r;
}

}  // namespace qcb::circuits
