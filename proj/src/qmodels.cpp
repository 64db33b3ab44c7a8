#include "qcb/qmodels.hpp"

#include <algorithm>
#include <cmath>

#include "qcb/errors.hpp"
#include "qcb/fingerprint.hpp"
#include "qcb/rng.hpp"

namespace qcb::qmodels {

using classical::LogisticParams;
using classical::LogisticRegression;
using qsim::QuantumState;

namespace {

void vqc_row(const CircuitConfig& config, std::span<const double> theta, std::span<const double> x,
             std::span<double> out) {
  auto state = qsim::run_circuit(QuantumState::zero(config.n_qubits), circuits::build_vqc_circuit(config, x, theta));
  for (int q = 0; q < config.n_qubits; ++q) out[static_cast<std::size_t>(q)] = qsim::expectation_z(state, q);
}

CostHamiltonian with_sample_weights(const CostHamiltonian& h, std::span<const double> x) {
  CostHamiltonian s;
  s.zz_terms = h.zz_terms;
  s.z_terms.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) s.z_terms.push_back({static_cast<int>(i), x[i]});
  return s;
}

void qaoa_row(const CircuitConfig& config, const CostHamiltonian& h, std::span<const double> gamma,
              std::span<const double> beta, std::span<const double> x, std::span<double> out) {
  const auto n = config.n_qubits;
  auto state = qsim::run_circuit(QuantumState::plus(n),
                                 circuits::build_qaoa_circuit(config, with_sample_weights(h, x), gamma, beta));
  for (int q = 0; q < n; ++q) {
    out[static_cast<std::size_t>(q)] = qsim::expectation_z(state, q);
    out[static_cast<std::size_t>(n + q)] = qsim::expectation_x(state, q);
  }
}

void check_width(const CircuitConfig& config, const Matrix& X) {
  config.validate();
  if (X.cols() != static_cast<std::size_t>(config.n_qubits))
    throw UsageError("quantum features: input has " + std::to_string(X.cols()) + " columns, circuit has " +
                     std::to_string(config.n_qubits) + " qubits");
}

std::vector<QuantumState> feature_states(const Matrix& X, bool parallel) {
  std::vector<QuantumState> states(X.rows(), QuantumState::zero(1));
  const long n = static_cast<long>(X.rows());
#pragma omp parallel for schedule(static) if (parallel)
  for (long r = 0; r < n; ++r) {
    const auto x = X.row(static_cast<std::size_t>(r));
    states[static_cast<std::size_t>(r)] =
        qsim::run_circuit(QuantumState::zero(static_cast<int>(x.size())), circuits::build_feature_map(x));
  }
  return states;
}

Matrix kernel_impl(const Matrix& A, const Matrix& B, bool parallel) {
  if (A.cols() != B.cols()) throw UsageError("quantum kernel: feature count mismatch");
  const auto sa = feature_states(A, parallel);
  const auto sb = feature_states(B, parallel);
  Matrix K(A.rows(), B.rows());
  const long n = static_cast<long>(A.rows());
#pragma omp parallel for schedule(static) if (parallel)
  for (long i = 0; i < n; ++i)
    for (std::size_t j = 0; j < B.rows(); ++j)
      K(static_cast<std::size_t>(i), j) = qsim::overlap_sq(sa[static_cast<std::size_t>(i)], sb[j]);
  return K;
}

LogisticRegression fit_head(const Matrix& F, const Labels& y, int max_iter) {
  LogisticParams p;
  p.max_iter = max_iter;
  LogisticRegression head(p);
  head.fit(F, y, 0);
  return head;
}

// Minimizes negative training accuracy of a logistic head over the circuit
// parameters. `extract` maps a parameter vector to the feature matrix.
template <class Extract>
std::pair<std::vector<double>, TrainingTrace> train_bilevel(const Labels& y, int dim, const optimize::OptBudget& budget,
                                                            std::uint64_t seed, Extract extract) {
  TrainingTrace trace;
  auto loss = [&](std::span<const double> params) {
    const Matrix F = extract(params);
    const double acc = accuracy(y, fit_head(F, y, kInnerHeadIterations).predict(F));
    trace.accuracy.push_back(acc);
    return -acc;
  };
  const auto x0 = optimize::random_init(dim, derive_seed(seed, {hash_string("theta0")}));
  auto res = optimize::minimize(loss, x0, budget);
  if (res.status == optimize::OptStatus::AllNonFinite) throw DataError("circuit training produced no finite loss");
  trace.n_evals = res.n_evals;
  trace.status = res.status;
  trace.best_accuracy = -res.best_loss;
  return {std::move(res.best_params), std::move(trace)};
}

}  // namespace

Matrix vqc_features(const CircuitConfig& config, std::span<const double> theta, const Matrix& X) {
  check_width(config, X);
  Matrix F(X.rows(), static_cast<std::size_t>(config.n_qubits));
  const long n = static_cast<long>(X.rows());
#pragma omp parallel for schedule(static)
  for (long r = 0; r < n; ++r)
    vqc_row(config, theta, X.row(static_cast<std::size_t>(r)), F.row(static_cast<std::size_t>(r)));
  return F;
}

Matrix vqc_features_serial(const CircuitConfig& config, std::span<const double> theta, const Matrix& X) {
  check_width(config, X);
  Matrix F(X.rows(), static_cast<std::size_t>(config.n_qubits));
  for (std::size_t r = 0; r < X.rows(); ++r) vqc_row(config, theta, X.row(r), F.row(r));
  return F;
}

Matrix qaoa_features(const CircuitConfig& config, const CostHamiltonian& h, std::span<const double> gamma,
                     std::span<const double> beta, const Matrix& X) {
  check_width(config, X);
  Matrix F(X.rows(), 2 * static_cast<std::size_t>(config.n_qubits));
  const long n = static_cast<long>(X.rows());
#pragma omp parallel for schedule(static)
  for (long r = 0; r < n; ++r)
    qaoa_row(config, h, gamma, beta, X.row(static_cast<std::size_t>(r)), F.row(static_cast<std::size_t>(r)));
  return F;
}

Matrix qaoa_features_serial(const CircuitConfig& config, const CostHamiltonian& h, std::span<const double> gamma,
                            std::span<const double> beta, const Matrix& X) {
  check_width(config, X);
  Matrix F(X.rows(), 2 * static_cast<std::size_t>(config.n_qubits));
  for (std::size_t r = 0; r < X.rows(); ++r) qaoa_row(config, h, gamma, beta, X.row(r), F.row(r));
  return F;
}

Matrix quantum_kernel_matrix(const Matrix& A, const Matrix& B) { return kernel_impl(A, B, true); }
Matrix quantum_kernel_matrix_serial(const Matrix& A, const Matrix& B) { return kernel_impl(A, B, false); }

double accuracy(const Labels& truth, const Labels& pred) {
  if (truth.size() != pred.size()) throw UsageError("accuracy: length mismatch");
  if (truth.empty()) return 0.0;
  std::size_t hit = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) hit += truth[i] == pred[i];
  return static_cast<double>(hit) / static_cast<double>(truth.size());
}

std::uint64_t VqcModel::checksum() const {
  Fingerprint fp;
  fp.add(config.n_qubits).add(config.layers).add(std::span<const double>(theta)).add(head.checksum());
  for (auto [a, b] : circuits::vqc_entangling_pairs(config)) fp.add(a).add(b);
  return fp.value();
}

VqcModel train_vqc(const Matrix& X, const Labels& y, CircuitConfig config, const optimize::OptBudget& budget,
                   std::uint64_t seed) {
  config.family = circuits::Family::VQC;
  check_width(config, X);
  if (X.rows() != y.size()) throw UsageError("train_vqc: row/label count mismatch");
  if (!config.correlation && config.n_qubits >= 2 && X.rows() >= 2)
    config.correlation = circuits::build_correlation_graph(X);

  VqcModel m;
  auto [theta, trace] = train_bilevel(y, circuits::param_count(config), budget, seed,
                                      [&](std::span<const double> t) { return vqc_features(config, t, X); });
  m.config = std::move(config);
  m.theta = std::move(theta);
  m.trace = std::move(trace);
  m.head = fit_head(vqc_features(m.config, m.theta, X), y, kFinalHeadIterations);
  return m;
}

std::uint64_t QaoaModel::checksum() const {
  Fingerprint fp;
  fp.add(config.n_qubits).add(config.layers);
  for (const auto& t : hamiltonian.zz_terms) fp.add(t.i).add(t.j).add(t.weight);
  fp.add(std::span<const double>(z_offsets))
      .add(std::span<const double>(gamma))
      .add(std::span<const double>(beta))
      .add(head.checksum());
  return fp.value();
}

QaoaModel train_qaoa(const Matrix& X, const Labels& y, CircuitConfig config, const optimize::OptBudget& budget,
                     std::uint64_t seed) {
  config.family = circuits::Family::QAOA;
  check_width(config, X);
  if (X.rows() != y.size()) throw UsageError("train_qaoa: row/label count mismatch");
  if (X.rows() == 0) throw UsageError("train_qaoa: no training rows");
  if (!config.correlation && config.n_qubits >= 2 && X.rows() >= 2)
    config.correlation = circuits::build_correlation_graph(X);

  const auto n = static_cast<std::size_t>(config.n_qubits);
  QaoaModel m;
  m.z_offsets.assign(n, 0.0);
  for (std::size_t r = 0; r < X.rows(); ++r)
    for (std::size_t c = 0; c < n; ++c) m.z_offsets[c] += X(r, c) / static_cast<double>(X.rows());
  m.hamiltonian =
      circuits::make_cost_hamiltonian(config.correlation ? &*config.correlation : nullptr, config.n_qubits, m.z_offsets);

  const std::size_t half = n * static_cast<std::size_t>(config.layers);
  auto [params, trace] = train_bilevel(y, circuits::param_count(config), budget, seed, [&](std::span<const double> p) {
    return qaoa_features(config, m.hamiltonian, p.first(half), p.subspan(half), X);
  });
  m.config = std::move(config);
  m.gamma.assign(params.begin(), params.begin() + static_cast<long>(half));
  m.beta.assign(params.begin() + static_cast<long>(half), params.end());
  m.trace = std::move(trace);
  m.head = fit_head(m.features(X), y, kFinalHeadIterations);
  return m;
}

Labels QKernelModel::predict(const Matrix& X) const {
  if (svm.degenerate()) return svm.predict(Matrix(X.rows(), 0));
  if (X.cols() != static_cast<std::size_t>(n_qubits)) throw UsageError("QKernelModel: feature count mismatch");
  return svm.predict(quantum_kernel_matrix(X, support_rows));
}

std::uint64_t QKernelModel::checksum() const {
  return Fingerprint().add(n_qubits).add(svm.checksum()).add(support_rows.data()).value();
}

QKernelModel train_qkernel(const Matrix& X, const Labels& y, const classical::SvmParams& params) {
  if (X.rows() != y.size()) throw UsageError("train_qkernel: row/label count mismatch");
  if (X.cols() < 1 || X.cols() > static_cast<std::size_t>(qsim::kMaxQubits))
    throw ConfigError("train_qkernel: feature count must be in [1, 12]");
  QKernelModel m;
  m.n_qubits = static_cast<int>(X.cols());
  m.params = params;
  m.svm = classical::KernelSvm::fit(quantum_kernel_matrix(X, X), y, params);
  m.support_rows = X.select_rows(m.svm.support_indices());
  return m;
}

std::string to_string(QuantumKind k) {
  switch (k) {
    case QuantumKind::VQC: return "VQC";
    case QuantumKind::QAOA: return "QAOA";
    case QuantumKind::QKERNEL: return "QKERNEL";
  }
  return "?";
}

QuantumPipeline::QuantumPipeline(PipelineSpec spec) : spec_(std::move(spec)) {
  if (spec_.n_qubits < 1 || spec_.n_qubits > qsim::kMaxQubits) throw ConfigError("pipeline: n_qubits out of range");
  if (spec_.kind != QuantumKind::QKERNEL && spec_.layers < 1) throw ConfigError("pipeline: layers must be >= 1");
  if (spec_.head && spec_.kind != QuantumKind::VQC) throw ConfigError("pipeline: classical heads need VQC features");
  if (spec_.pca_components < 0) throw ConfigError("pipeline: negative PCA component count");
  spec_.budget.validate();
}

CircuitConfig QuantumPipeline::circuit_config() const {
  CircuitConfig c;
  c.family = spec_.kind == QuantumKind::QAOA ? circuits::Family::QAOA
             : spec_.kind == QuantumKind::VQC ? circuits::Family::VQC
                                              : circuits::Family::FEATURE_MAP;
  c.n_qubits = spec_.n_qubits;
  c.layers = spec_.layers;
  c.correlation = graph_;
  return c;
}

Matrix QuantumPipeline::encode(const Matrix& X) const {
  if (!fitted_) throw UsageError("pipeline: not fitted");
  Matrix Z = classical::apply_scaler(zscore_, X);
  if (pca_) Z = classical::pca_transform(*pca_, Z);
  return classical::apply_scaler(angle_, Z).left_columns(static_cast<std::size_t>(spec_.n_qubits));
}

Matrix QuantumPipeline::intermediate(const Matrix& X) const {
  const Matrix E = encode(X);
  if (vqc_) return vqc_->features(E);
  if (qaoa_) return qaoa_->features(E);
  return E;
}

void QuantumPipeline::fit(const Matrix& X, const Labels& y, std::uint64_t seed) {
  if (X.rows() != y.size()) throw UsageError("pipeline: row/label count mismatch");
  if (X.rows() < 2) throw UsageError("pipeline: need at least two training rows");
  fitted_ = false;
  pca_.reset();
  graph_.reset();
  vqc_.reset();
  qaoa_.reset();
  qkernel_.reset();
  head_.reset();

  zscore_ = classical::fit_scaler(classical::ScalerKind::ZSCORE, X);
  Matrix Z = classical::apply_scaler(zscore_, X);
  if (spec_.pca_components > 0) {
    pca_ = classical::fit_pca(Z, spec_.pca_components);
    Z = classical::pca_transform(*pca_, Z);
  }
  if (Z.cols() < static_cast<std::size_t>(spec_.n_qubits))
    throw DataError("pipeline: " + std::to_string(Z.cols()) + " encoded columns for " +
                    std::to_string(spec_.n_qubits) + " qubits");
  angle_ = classical::fit_scaler(classical::ScalerKind::ANGLE, Z);
  const Matrix E = classical::apply_scaler(angle_, Z).left_columns(static_cast<std::size_t>(spec_.n_qubits));
  if (spec_.n_qubits >= 2) graph_ = circuits::build_correlation_graph(E);
  fitted_ = true;

  const auto model_seed = derive_seed(seed, {hash_string("quantum")});
  switch (spec_.kind) {
    case QuantumKind::VQC: vqc_ = train_vqc(E, y, circuit_config(), spec_.budget, model_seed); break;
    case QuantumKind::QAOA: qaoa_ = train_qaoa(E, y, circuit_config(), spec_.budget, model_seed); break;
    case QuantumKind::QKERNEL: qkernel_ = train_qkernel(E, y); break;
  }
  if (spec_.head) {
    head_ = classical::make_baseline(*spec_.head, spec_.head_params);
    head_->fit(vqc_->features(E), y, derive_seed(seed, {hash_string("head")}));
  }
}

Labels QuantumPipeline::predict(const Matrix& X) const {
  const Matrix E = encode(X);
  if (head_) return head_->predict(vqc_->features(E));
  if (vqc_) return vqc_->predict(E);
  if (qaoa_) return qaoa_->predict(E);
  return qkernel_->predict(E);
}

std::uint64_t QuantumPipeline::checksum() const {
  Fingerprint fp;
  fp.add(zscore_.checksum()).add(angle_.checksum());
  if (pca_) fp.add(pca_->checksum());
  if (graph_) {
    fp.add(graph_->rho.data());
    for (const auto& p : graph_->pairs) fp.add(p.i).add(p.j).add(p.rho);
  }
  if (vqc_) fp.add(vqc_->checksum());
  if (qaoa_) fp.add(qaoa_->checksum());
  if (qkernel_) fp.add(qkernel_->checksum());
  if (head_) fp.add(head_->checksum());
  return fp.value();
}

std::size_t QuantumPipeline::fitted_param_count() const {
  std::size_t n = static_cast<std::size_t>(circuit_param_count());
  if (head_) n += head_->fitted_param_count();
  return n;
}

bool QuantumPipeline::degenerate() const {
  if (head_) return head_->degenerate();
  if (vqc_) return vqc_->head.degenerate();
  if (qaoa_) return qaoa_->head.degenerate();
  return qkernel_ && qkernel_->svm.degenerate();
}

int QuantumPipeline::intermediate_feature_count() const {
  if (spec_.pca_components > 0) return pca_ ? static_cast<int>(pca_->components.rows()) : spec_.pca_components;
  if (spec_.head) return spec_.n_qubits;
  if (spec_.kind == QuantumKind::QAOA) return 2 * spec_.n_qubits;
  return spec_.kind == QuantumKind::VQC ? spec_.n_qubits : 0;
}

int QuantumPipeline::circuit_param_count() const { return circuits::param_count(circuit_config()); }

int QuantumPipeline::circuit_depth() const {
  const std::vector<double> zeros(static_cast<std::size_t>(spec_.n_qubits), 0.0);
  const auto config = circuit_config();
  switch (spec_.kind) {
    case QuantumKind::VQC: {
      const std::vector<double> theta(static_cast<std::size_t>(circuits::param_count(config)), 0.0);
      return circuits::circuit_depth(circuits::build_vqc_circuit(config, zeros, theta));
    }
    case QuantumKind::QAOA: {
      const std::vector<double> angles(static_cast<std::size_t>(spec_.n_qubits * spec_.layers), 0.0);
      const auto h = circuits::make_cost_hamiltonian(graph_ ? &*graph_ : nullptr, spec_.n_qubits, zeros);
      return circuits::circuit_depth(circuits::build_qaoa_circuit(config, h, angles, angles));
    }
    case QuantumKind::QKERNEL: return circuits::circuit_depth(circuits::build_feature_map(zeros));
  }
  return 0;
}

std::unique_ptr<QuantumPipeline> make_hybrid_qc(classical::BaselineKind head, const optimize::OptBudget& budget) {
  PipelineSpec s;
  s.kind = QuantumKind::VQC;
  s.n_qubits = 6;
  s.layers = 3;
  s.head = head;
  s.head_params.forest.n_trees = 100;
  s.budget = budget;
  return std::make_unique<QuantumPipeline>(s);
}

std::unique_ptr<QuantumPipeline> make_hybrid_cq(QuantumKind kind, const optimize::OptBudget& budget) {
  PipelineSpec s;
  s.kind = kind;
  s.n_qubits = 4;
  s.layers = 2;
  s.pca_components = 4;
  s.budget = budget;
  return std::make_unique<QuantumPipeline>(s);
}

}  // namespace qcb::qmodels
