#include "qcb/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "qcb/errors.hpp"
#include "qcb/metrics.hpp"
#include "qcb/qmodels.hpp"
#include "qcb/rng.hpp"

namespace qcb::eval {

void CvPlan::validate() const {
  if (seeds.empty()) throw ConfigError("CV plan: no seeds");
  if (holdout_fraction > 0.0) {
    if (holdout_fraction >= 1.0) throw ConfigError("CV plan: holdout fraction must be < 1");
  } else if (n_folds < 2) {
    throw ConfigError("CV plan: n_folds must be >= 2");
  }
  if (!stratified) throw ConfigError("CV plan: only stratified splitting is supported");
}

int MetricsReport::failed_cells() const {
  return static_cast<int>(std::count_if(cells.begin(), cells.end(), [](const CellResult& c) { return !c.ok; }));
}

const ModelSummary* MetricsReport::find(const std::string& id) const {
  for (const auto& m : models)
    if (m.id == id) return &m;
  return nullptr;
}

std::map<std::string, std::string> default_deviations() {
  return {
      {"optimizer_engine",
       "Nelder-Mead simplex replaces COBYLA (unconstrained problems); budget counts distinct loss evaluations"},
      {"feature_map_hadamard",
       "Hadamard layer precedes the diagonal ZZ feature map; without it the kernel is identically 1"},
      {"qaoa_encoding",
       "QAOA Z weights are each sample's encoded feature values; the training-fold mean is kept as a recorded "
       "offset. ZZ weights are training-fold Spearman correlations"},
      {"qaoa_parameters", "per-qubit gamma and beta per layer (2 * n_qubits * layers angles)"},
      {"simulation", "exact statevector simulation with exact expectation values"},
      {"angle_encoding", "z-scored inputs are min-max mapped to [0, pi] on the training fold before encoding"},
      {"svm_multiclass", "one-vs-one voting"},
      {"logistic_regression", "multinomial softmax, gradient descent with backtracking"},
      {"aggregates",
       "Property = {Theft, Robbery, Dacoity, Burglary}; Social = {Woman & Child Repression, Riot, Narcotics, "
       "Smuggling}"},
  };
}

std::vector<int> plan_folds(const Labels& y, const CvPlan& plan, std::size_t seed_index, std::uint64_t master_seed) {
  const auto seed = derive_seed(master_seed, {hash_string("folds"), plan.seeds.at(seed_index)});
  if (plan.holdout_fraction > 0.0) {
    auto test = stratified_holdout(y, plan.holdout_fraction, seed);
    for (auto& v : test) v = v ? 0 : 1;
    return test;
  }
  return stratified_folds(y, plan.n_folds, seed);
}

bool folds_are_stratified(const Labels& y, const std::vector<int>& folds, int n_folds) {
  if (folds.size() != y.size()) return false;
  std::map<int, std::size_t> total;
  std::map<std::pair<int, int>, std::size_t> per;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (folds[i] < 0 || folds[i] >= n_folds) return false;
    ++total[y[i]];
    ++per[{folds[i], y[i]}];
  }
  for (const auto& [label, n] : total) {
    const double expected = static_cast<double>(n) / n_folds;
    for (int f = 0; f < n_folds; ++f) {
      auto it = per.find({f, label});
      const double got = it == per.end() ? 0.0 : static_cast<double>(it->second);
      if (std::abs(got - expected) >= 1.0) return false;
    }
  }
  return true;
}

stats::PairedTTest aligned_ttest(const std::map<std::pair<int, int>, double>& a,
                                 const std::map<std::pair<int, int>, double>& b) {
  if (a.size() != b.size()) throw UsageError("paired test: score vectors have different cells");
  std::vector<double> va, vb;
  for (auto ia = a.begin(), ib = b.begin(); ia != a.end(); ++ia, ++ib) {
    if (ia->first != ib->first) throw UsageError("paired test: (seed, fold) keys do not align");
    va.push_back(ia->second);
    vb.push_back(ib->second);
  }
  return stats::paired_ttest(va, vb);
}

namespace {

struct Split {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

Interval interval_of(const std::vector<double>& v) {
  if (v.empty()) return {};
  if (v.size() == 1) return {v[0], 0.0};
  return stats::confidence_interval(v);
}

CellResult run_cell(const data::LabeledDataset& d, const ModelSpec& spec, const Split& split, int seed_index, int fold,
                    std::uint64_t cell_seed) {
  CellResult c;
  c.model = spec.id;
  c.seed_index = seed_index;
  c.fold = fold;
  try {
    const Matrix Xtr = d.X.select_rows(split.train);
    const Labels ytr = select_labels(d.y, split.train);
    const Matrix Xte = d.X.select_rows(split.test);
    const Labels yte = select_labels(d.y, split.test);

    auto model = spec.make();
    const auto t0 = std::chrono::steady_clock::now();
    model->fit(Xtr, ytr, cell_seed);
    const auto t1 = std::chrono::steady_clock::now();
    c.train_seconds = std::chrono::duration<double>(t1 - t0).count();

    const auto m = classification_metrics(yte, model->predict(Xte), data::kSeverityClasses);
    c.accuracy = m.accuracy;
    c.precision = m.precision;
    c.recall = m.recall;
    c.f1 = m.f1;
    for (const auto& s : m.per_class) {
      c.per_class_f1.push_back(s.f1);
      c.per_class_recall.push_back(s.recall);
    }
    c.checksum = model->checksum();
    c.fitted_params = model->fitted_param_count();
    if (const auto* q = dynamic_cast<const qmodels::QuantumPipeline*>(model.get())) {
      c.circuit_depth = q->circuit_depth();
      c.intermediate_features = q->intermediate_feature_count();
      c.fitted_params = static_cast<std::size_t>(q->circuit_param_count());
    }
    c.ok = true;
  } catch (const std::exception& e) {
    c.ok = false;
    c.error = e.what();
  }
  return c;
}

}  // namespace

MetricsReport run_benchmark(const data::LabeledDataset& dataset, const std::vector<ModelSpec>& registry,
                            const CvPlan& plan, const RunOptions& options) {
  plan.validate();
  dataset.validate();
  if (registry.empty()) throw UsageError("run_benchmark: empty registry");

  MetricsReport report;
  report.master_seed = options.master_seed;
  report.reference = options.reference;
  report.plan = plan;
  report.deviations = default_deviations();
  report.dataset.n_samples = dataset.size();
  report.dataset.feature_names = dataset.feature_names;
  report.dataset.class_counts.assign(data::kSeverityClasses, 0);
  for (int v : dataset.y) ++report.dataset.class_counts[static_cast<std::size_t>(v)];
  report.dataset.provenance = dataset.provenance == data::Provenance::Synthetic ? "synthetic" : "ingested";

  const int folds_per_seed = plan.holdout_fraction > 0.0 ? 1 : plan.n_folds;
  report.stratification_ok = true;
  std::vector<std::vector<Split>> splits(plan.seeds.size());
  for (std::size_t s = 0; s < plan.seeds.size(); ++s) {
    const auto folds = plan_folds(dataset.y, plan, s, options.master_seed);
    if (plan.holdout_fraction <= 0.0 && !folds_are_stratified(dataset.y, folds, plan.n_folds))
      report.stratification_ok = false;
    for (int f = 0; f < folds_per_seed; ++f) {
      Split sp;
      for (std::size_t i = 0; i < folds.size(); ++i) (folds[i] == f ? sp.test : sp.train).push_back(i);
      splits[s].push_back(std::move(sp));
    }
  }

  struct Job {
    std::size_t model;
    std::size_t seed;
    int fold;
  };
  std::vector<Job> jobs;
  for (std::size_t m = 0; m < registry.size(); ++m)
    for (std::size_t s = 0; s < plan.seeds.size(); ++s)
      for (int f = 0; f < folds_per_seed; ++f) jobs.push_back({m, s, f});

  report.cells.resize(jobs.size());
  const long n_jobs = static_cast<long>(jobs.size());
#pragma omp parallel for schedule(dynamic) if (options.parallel)
  for (long j = 0; j < n_jobs; ++j) {
    const auto& job = jobs[static_cast<std::size_t>(j)];
    const auto& spec = registry[job.model];
    const auto seed = derive_seed(options.master_seed, {hash_string(spec.id), plan.seeds[job.seed],
                                                        static_cast<std::uint64_t>(job.fold)});
    report.cells[static_cast<std::size_t>(j)] =
        run_cell(dataset, spec, splits[job.seed][static_cast<std::size_t>(job.fold)], static_cast<int>(job.seed),
                 job.fold, seed);
  }

  // Aggregate per model.
  std::map<std::string, std::map<std::pair<int, int>, double>> acc_by_key;
  std::map<std::string, bool> complete;
  for (const auto& spec : registry) {
    ModelSummary ms;
    ms.id = spec.id;
    ms.display = spec.display;
    ms.category = spec.category;
    ms.n_qubits = spec.n_qubits;
    ms.layers = spec.layers;
    std::vector<double> acc, prec, rec, f1, secs, depth, params;
    std::vector<std::vector<double>> pcf1(data::kSeverityClasses), pcacc(data::kSeverityClasses);
    for (const auto& c : report.cells) {
      if (c.model != spec.id) continue;
      if (!c.ok) {
        ++ms.cells_failed;
        continue;
      }
      ++ms.cells_ok;
      acc.push_back(c.accuracy);
      prec.push_back(c.precision);
      rec.push_back(c.recall);
      f1.push_back(c.f1);
      secs.push_back(c.train_seconds);
      params.push_back(static_cast<double>(c.fitted_params));
      if (c.circuit_depth >= 0) depth.push_back(c.circuit_depth);
      ms.intermediate_features = std::max(ms.intermediate_features, c.intermediate_features);
      for (std::size_t k = 0; k < c.per_class_f1.size(); ++k) {
        pcf1[k].push_back(c.per_class_f1[k]);
        pcacc[k].push_back(c.per_class_recall[k]);
      }
      acc_by_key[spec.id][{c.seed_index, c.fold}] = c.accuracy;
    }
    complete[spec.id] = ms.cells_failed == 0 && ms.cells_ok > 0;
    if (ms.cells_ok > 0) {
      ms.accuracy = interval_of(acc);
      ms.precision = interval_of(prec);
      ms.recall = interval_of(rec);
      ms.f1 = interval_of(f1);
      ms.train_seconds = interval_of(secs);
      ms.param_count = stats::mean(params);
      if (!depth.empty()) ms.circuit_depth = stats::mean(depth);
      for (int k = 0; k < data::kSeverityClasses; ++k) {
        ms.per_class_f1.push_back(stats::mean(pcf1[static_cast<std::size_t>(k)]));
        ms.per_class_accuracy.push_back(stats::mean(pcacc[static_cast<std::size_t>(k)]));
      }
      if (ms.n_qubits > 0) ms.qubit_efficiency = ms.accuracy.mean / ms.n_qubits;
    }
    report.models.push_back(std::move(ms));
  }

  if (const ModelSummary* ref = report.find(options.reference); ref && ref->cells_ok > 0) {
    const double ref_acc = ref->accuracy.mean, ref_time = ref->train_seconds.mean;
    for (auto& ms : report.models) {
      if (ms.cells_ok == 0) continue;
      ms.gap_vs_reference = ref_acc - ms.accuracy.mean;
      if (ms.id == options.reference) ms.speedup_vs_reference = 1.0;
      else if (ms.train_seconds.mean > 0.0) ms.speedup_vs_reference = ref_time / ms.train_seconds.mean;
    }
  }

  for (std::size_t i = 0; i < registry.size(); ++i) {
    for (std::size_t j = i + 1; j < registry.size(); ++j) {
      const auto& a = registry[i].id;
      const auto& b = registry[j].id;
      if (!complete[a] || !complete[b] || acc_by_key[a].size() < 2) continue;
      const auto t = aligned_ttest(acc_by_key[a], acc_by_key[b]);
      report.pairwise.push_back({a, b, static_cast<int>(acc_by_key[a].size()), t.t, t.p, t.cohens_d,
                                 stats::to_string(t.branch), stats::significance_stars(t.p)});
    }
  }
  return report;
}

}  // namespace qcb::eval
