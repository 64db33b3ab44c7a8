#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "qcb/classical/classifier.hpp"
#include "qcb/optimize.hpp"

namespace qcb::eval {

struct ModelSpec {
  /// Stable identifier used on the command line and in reports.
  std::string id;
  std::string display;
  /// quantum, q->c, c->q, classical or baseline.
  std::string category;
  int n_qubits = 0;
  int layers = 0;
  std::function<std::unique_ptr<classical::Classifier>()> make;
};

/// The benchmark's model table plus a majority-class dummy (17 entries).
std::vector<ModelSpec> default_registry(const optimize::OptBudget& budget = {});

/// "all" or a comma-separated list of ids. Throws UsageError on unknown ids.
std::vector<ModelSpec> select_models(const std::vector<ModelSpec>& registry, const std::string& list);

}  // namespace qcb::eval
