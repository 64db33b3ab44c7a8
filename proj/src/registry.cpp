#include "qcb/registry.hpp"

#include <sstream>

#include "qcb/classical.hpp"
#include "qcb/errors.hpp"
#include "qcb/qmodels.hpp"

namespace qcb::eval {

using classical::BaselineKind;
using qmodels::PipelineSpec;
using qmodels::QuantumKind;

namespace {

ModelSpec quantum(std::string id, std::string display, QuantumKind kind, int nq, int layers,
                  const optimize::OptBudget& budget) {
  PipelineSpec s;
  s.kind = kind;
  s.n_qubits = nq;
  s.layers = layers;
  s.budget = budget;
  return {std::move(id), std::move(display), "quantum", nq, kind == QuantumKind::QKERNEL ? 0 : layers,
          [s] { return std::make_unique<qmodels::QuantumPipeline>(s); }};
}

ModelSpec hybrid_qc(std::string id, std::string display, BaselineKind head, const optimize::OptBudget& budget) {
  return {std::move(id), std::move(display), "q->c", 6, 3,
          [head, budget] { return qmodels::make_hybrid_qc(head, budget); }};
}

ModelSpec hybrid_cq(std::string id, std::string display, QuantumKind kind, const optimize::OptBudget& budget) {
  return {std::move(id), std::move(display), "c->q", 4, kind == QuantumKind::QKERNEL ? 0 : 2,
          [kind, budget] { return qmodels::make_hybrid_cq(kind, budget); }};
}

ModelSpec baseline(std::string id, std::string display, BaselineKind kind) {
  return {std::move(id), std::move(display), "classical", 0, 0, [kind] { return std::make_unique<classical::Standardized>(classical::make_baseline(kind)); }};
}

}  // namespace

std::vector<ModelSpec> default_registry(const optimize::OptBudget& budget) {
  return {
      quantum("vqc_4q2l", "VQC (4q, 2L)", QuantumKind::VQC, 4, 2, budget),
      quantum("vqc_6q3l", "VQC (6q, 3L)", QuantumKind::VQC, 6, 3, budget),
      quantum("qaoa_4q2l", "QAOA (4q, 2L)", QuantumKind::QAOA, 4, 2, budget),
      quantum("qaoa_6q3l", "QAOA (6q, 3L)", QuantumKind::QAOA, 6, 3, budget),
      quantum("qkernel_4q", "QKernel SVM (4q)", QuantumKind::QKERNEL, 4, 0, budget),
      hybrid_qc("q_rf", "Q->RF", BaselineKind::RANDOM_FOREST, budget),
      hybrid_qc("q_svm", "Q->SVM", BaselineKind::SVM_RBF, budget),
      hybrid_qc("q_logreg", "Q->LogReg", BaselineKind::LOGISTIC_REGRESSION, budget),
      hybrid_qc("q_dectree", "Q->DecTree", BaselineKind::DECISION_TREE, budget),
      hybrid_cq("pca_vqc", "PCA->VQC", QuantumKind::VQC, budget),
      hybrid_cq("pca_qaoa", "PCA->QAOA", QuantumKind::QAOA, budget),
      hybrid_cq("pca_qkernel", "PCA->QKernel", QuantumKind::QKERNEL, budget),
      baseline("random_forest", "Random Forest", BaselineKind::RANDOM_FOREST),
      baseline("svm_rbf", "SVM (RBF)", BaselineKind::SVM_RBF),
      baseline("logreg", "Logistic Reg.", BaselineKind::LOGISTIC_REGRESSION),
      baseline("dectree", "Decision Tree", BaselineKind::DECISION_TREE),
      {"majority", "Majority class", "baseline", 0, 0, [] { return std::make_unique<classical::MajorityClassifier>(); }},
  };
}

std::vector<ModelSpec> select_models(const std::vector<ModelSpec>& registry, const std::string& list) {
  if (list == "all") return registry;
  std::vector<ModelSpec> out;
  std::istringstream ss(list);
  std::string id;
  while (std::getline(ss, id, ',')) {
    if (id.empty()) continue;
    bool found = false;
    for (const auto& m : registry) {
      if (m.id == id) {
        out.push_back(m);
        found = true;
        break;
      }
    }
    if (!found) throw UsageError("unknown model id '" + id + "'");
  }
  if (out.empty()) throw UsageError("no models selected");
  return out;
}

}  // namespace qcb::eval
