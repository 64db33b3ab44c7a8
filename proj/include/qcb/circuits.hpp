#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qcb/matrix.hpp"
#include "qcb/qsim.hpp"

namespace qcb::circuits {

using qsim::GateOp;
using GateList = std::vector<GateOp>;

struct SpearmanResult {
  double rho = 0.0;
  /// Set when either input has zero variance; rho is then reported as 0.
  bool degenerate = false;
};

/// Average (fractional) ranks, 1-based.
std::vector<double> average_ranks(std::span<const double> v);

/// Spearman rank correlation, computed as the Pearson correlation of average
/// ranks. Throws UsageError on length mismatch or fewer than two samples.
SpearmanResult spearman(std::span<const double> x, std::span<const double> y);

struct CorrelationPair {
  int i = 0;
  int j = 0;
  double rho = 0.0;
  bool operator==(const CorrelationPair&) const = default;
};

struct CorrelationGraph {
  int n_features = 0;
  double threshold = 0.5;
  Matrix rho;
  /// i < j, |rho| > threshold, sorted by descending |rho| then (i, j).
  std::vector<CorrelationPair> pairs;
  std::vector<bool> degenerate_features;

  /// Pairs whose indices both fall below n_qubits, in graph order.
  std::vector<CorrelationPair> pairs_within(int n_qubits) const;
};

/// Features are columns of `features`.
CorrelationGraph build_correlation_graph(const Matrix& features, double threshold = 0.5);

enum class Family { VQC, QAOA, FEATURE_MAP };

std::string to_string(Family f);

struct CircuitConfig {
  Family family = Family::VQC;
  int n_qubits = 4;
  int layers = 2;
  std::optional<CorrelationGraph> correlation;

  /// Throws ConfigError on out-of-range qubits/layers.
  void validate() const;
};

struct ZZTerm {
  int i = 0;
  int j = 0;
  double weight = 0.0;
};

struct ZTerm {
  int i = 0;
  double weight = 0.0;
};

/// Diagonal cost operator sum w_ij Z_i Z_j + sum w_i Z_i.
struct CostHamiltonian {
  std::vector<ZZTerm> zz_terms;
  std::vector<ZTerm> z_terms;
};

/// ZZ weights mirror the graph's pairs restricted to n_qubits; one Z term per
/// qubit with the supplied weight.
CostHamiltonian make_cost_hamiltonian(const CorrelationGraph* graph, int n_qubits, std::span<const double> z_weights);

/// Correlation-aware ansatz: RY(x_j) encoding, then per layer RY(theta) and
/// entanglement. Layer 0 entangles the correlated pairs (falling back to a
/// CNOT ladder when none apply); later layers use the ladder.
/// theta is laid out layer-major: theta[l * n + j].
GateList build_vqc_circuit(const CircuitConfig& config, std::span<const double> x, std::span<const double> theta);

/// Layer-0 entangling CNOTs actually used by build_vqc_circuit.
std::vector<std::pair<int, int>> vqc_entangling_pairs(const CircuitConfig& config);

/// Multi-angle QAOA: per layer l, ZZPhase(gamma[l,min(i,j)] * w_ij) for each
/// ZZ term, RZ(2 gamma[l,i] w_i) for each Z term, then XMixer(beta[l,i]).
/// The |+> preparation is not part of the list; simulate from init_plus.
GateList build_qaoa_circuit(const CircuitConfig& config, const CostHamiltonian& h, std::span<const double> gamma,
                            std::span<const double> beta);

/// H on every qubit, RZ(2 x_i), then ZZPhase(x_i x_j) for every i < j.
GateList build_feature_map(std::span<const double> x);

/// Total gate count.
inline int circuit_depth(std::span<const GateOp> gates) { return static_cast<int>(gates.size()); }

int param_count(const CircuitConfig& config);

struct ExpressibilityResult {
  double score = 0.0;
  double kl_divergence = 0.0;
  int n_pairs = 0;
  /// Set when n_pairs < 100.
  bool low_precision = false;
};

inline constexpr int kExpressibilityBins = 75;

/// KL divergence of the fidelity histogram against the Haar fidelity
/// distribution for a 2^n_qubits dimensional space.
double fidelity_kl_to_haar(std::span<const double> fidelities, int n_qubits, int bins = kExpressibilityBins);

/// Expressibility of the VQC ansatz: fidelities between pairs of states at
/// uniformly random parameters (zero input), scored as 1 / (1 + D_KL).
/// Parallel over pairs unless `parallel` is false; each pair draws from its
/// own derived stream, so both paths agree exactly.
ExpressibilityResult expressibility(const CircuitConfig& config, int n_pairs, std::uint64_t seed,
                                    bool parallel = true);

}  // namespace qcb::circuits
