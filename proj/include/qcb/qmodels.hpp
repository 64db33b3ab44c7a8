#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qcb/circuits.hpp"
#include "qcb/classical.hpp"
#include "qcb/matrix.hpp"
#include "qcb/optimize.hpp"

namespace qcb::qmodels {

using circuits::CircuitConfig;
using circuits::CostHamiltonian;

// Feature extraction and kernels. The plain versions split samples across
// OpenMP threads; the *_serial versions are the single-threaded reference
// and must agree bit for bit.

/// <Z_i> of the VQC state for every row (rows are ANGLE-scaled inputs).
Matrix vqc_features(const CircuitConfig& config, std::span<const double> theta, const Matrix& X);
Matrix vqc_features_serial(const CircuitConfig& config, std::span<const double> theta, const Matrix& X);

/// <Z_i> then <X_i> of the QAOA state for every row. The ZZ terms of `h` are
/// shared; each row supplies its own Z weights (the row's values).
Matrix qaoa_features(const CircuitConfig& config, const CostHamiltonian& h, std::span<const double> gamma,
                     std::span<const double> beta, const Matrix& X);
Matrix qaoa_features_serial(const CircuitConfig& config, const CostHamiltonian& h, std::span<const double> gamma,
                            std::span<const double> beta, const Matrix& X);

/// K[i][j] = |<phi(a_i)|phi(b_j)>|^2 under build_feature_map.
Matrix quantum_kernel_matrix(const Matrix& A, const Matrix& B);
Matrix quantum_kernel_matrix_serial(const Matrix& A, const Matrix& B);

/// Fraction of equal entries.
double accuracy(const Labels& truth, const Labels& pred);

/// Inner-loop and final iteration caps for the logistic readout head.
inline constexpr int kInnerHeadIterations = 100;
inline constexpr int kFinalHeadIterations = 1000;

struct TrainingTrace {
  int n_evals = 0;
  double best_accuracy = 0.0;
  optimize::OptStatus status = optimize::OptStatus::Converged;
  /// Training accuracy per distinct evaluation.
  std::vector<double> accuracy;
};

class VqcModel {
 public:
  CircuitConfig config;
  std::vector<double> theta;
  classical::LogisticRegression head;
  TrainingTrace trace;

  Matrix features(const Matrix& X) const { return vqc_features(config, theta, X); }
  Labels predict(const Matrix& X) const { return head.predict(features(X)); }
  std::uint64_t checksum() const;
};

/// Bilevel training: the optimizer searches theta to maximize the training
/// accuracy of a logistic head fit on the circuit's features. The correlation
/// graph is built from X when the config does not carry one.
VqcModel train_vqc(const Matrix& X, const Labels& y, CircuitConfig config, const optimize::OptBudget& budget,
                   std::uint64_t seed);

class QaoaModel {
 public:
  CircuitConfig config;
  /// ZZ weights from the training correlation graph; Z weights are per sample.
  CostHamiltonian hamiltonian;
  /// Training-fold mean of each encoded feature (recorded offset).
  std::vector<double> z_offsets;
  std::vector<double> gamma;
  std::vector<double> beta;
  classical::LogisticRegression head;
  TrainingTrace trace;

  Matrix features(const Matrix& X) const { return qaoa_features(config, hamiltonian, gamma, beta, X); }
  Labels predict(const Matrix& X) const { return head.predict(features(X)); }
  std::uint64_t checksum() const;
};

QaoaModel train_qaoa(const Matrix& X, const Labels& y, CircuitConfig config, const optimize::OptBudget& budget,
                     std::uint64_t seed);

class QKernelModel {
 public:
  int n_qubits = 0;
  classical::SvmParams params;
  classical::KernelSvm svm;
  /// Training rows that ended up as support vectors.
  Matrix support_rows;

  Labels predict(const Matrix& X) const;
  std::uint64_t checksum() const;
};

QKernelModel train_qkernel(const Matrix& X, const Labels& y, const classical::SvmParams& params = {});

enum class QuantumKind { VQC, QAOA, QKERNEL };

std::string to_string(QuantumKind k);

struct PipelineSpec {
  QuantumKind kind = QuantumKind::VQC;
  int n_qubits = 4;
  int layers = 2;
  /// > 0 inserts PCA to this many components after z-scoring.
  int pca_components = 0;
  /// Replaces the quantum readout with a classical model on VQC features.
  std::optional<classical::BaselineKind> head;
  classical::BaselineParams head_params;
  optimize::OptBudget budget;
};

/// z-score -> [PCA] -> angle scale -> first n_qubits columns -> quantum model
/// [-> classical head]. Every fitted piece sees only the rows given to fit().
class QuantumPipeline final : public classical::Classifier {
 public:
  explicit QuantumPipeline(PipelineSpec spec);

  void fit(const Matrix& X, const Labels& y, std::uint64_t seed) override;
  Labels predict(const Matrix& X) const override;
  std::uint64_t checksum() const override;
  std::size_t fitted_param_count() const override;
  bool degenerate() const override;

  const PipelineSpec& spec() const { return spec_; }

  /// Encoded circuit inputs (after scaling, PCA and truncation).
  Matrix encode(const Matrix& X) const;
  /// Matrix handed to the final classifier: quantum features for VQC/QAOA
  /// and for hybrids with a head, encoded inputs for the kernel model.
  Matrix intermediate(const Matrix& X) const;

  /// Columns leaving PCA (C->Q) or the quantum feature extractor (Q->C).
  int intermediate_feature_count() const;
  /// Trainable circuit angles.
  int circuit_param_count() const;
  /// Gate count of the fitted circuit.
  int circuit_depth() const;
  const std::optional<classical::PcaTransform>& pca() const { return pca_; }
  const std::optional<VqcModel>& vqc() const { return vqc_; }
  const std::optional<QaoaModel>& qaoa() const { return qaoa_; }
  const std::optional<QKernelModel>& qkernel() const { return qkernel_; }
  const classical::Classifier* head() const { return head_.get(); }
  const std::optional<circuits::CorrelationGraph>& correlation() const { return graph_; }

 private:
  CircuitConfig circuit_config() const;

  PipelineSpec spec_;
  classical::ScalerState zscore_;
  std::optional<classical::PcaTransform> pca_;
  classical::ScalerState angle_;
  std::optional<circuits::CorrelationGraph> graph_;
  std::optional<VqcModel> vqc_;
  std::optional<QaoaModel> qaoa_;
  std::optional<QKernelModel> qkernel_;
  std::unique_ptr<classical::Classifier> head_;
  bool fitted_ = false;
};

/// Q->C: 6-qubit 3-layer VQC features feeding a classical head (100 trees for
/// the forest).
std::unique_ptr<QuantumPipeline> make_hybrid_qc(classical::BaselineKind head, const optimize::OptBudget& budget = {});
/// C->Q: PCA to 4 components feeding a 4-qubit quantum model.
std::unique_ptr<QuantumPipeline> make_hybrid_cq(QuantumKind kind, const optimize::OptBudget& budget = {});

}  // namespace qcb::qmodels
