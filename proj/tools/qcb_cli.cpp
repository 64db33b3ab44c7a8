// qcb: synthetic data, benchmark runs, expressibility sweeps and report
// re-rendering for the quantum/classical crime-severity benchmark.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qcb/circuits.hpp"
#include "qcb/data.hpp"
#include "qcb/errors.hpp"
#include "qcb/harness.hpp"
#include "qcb/registry.hpp"
#include "qcb/report.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitPartial = 3;

struct SynthArgs {
  int units = 18;
  int years = 16;
  std::uint64_t seed = 0;
  std::string out = "crime.csv";
};

struct RunArgs {
  std::string data;
  std::string models = "all";
  int folds = 5;
  int seeds = 5;
  std::uint64_t master_seed = 0;
  std::string out_dir = "qcb_out";
  std::string format = "both";
  double holdout = 0.0;
  int top_features = 10;
  int max_evals = 150;
  std::string reference = "random_forest";
  bool serial = false;
};

struct ExprArgs {
  int qubits = 4;
  int max_layers = 3;
  int pairs = 5000;
  std::uint64_t seed = 0;
  std::string out = "expressibility.csv";
};

struct ReportArgs {
  std::string in;
  std::string out_dir = "qcb_out";
  std::string format = "csv";
};

int cmd_synth(const SynthArgs& a) {
  const auto schema = qcb::data::CrimeSchema::default_schema();
  const auto records = qcb::data::synthesize({a.units, a.years, a.seed, 2005}, schema);
  qcb::data::write_csv(a.out, records, schema);
  const auto d = qcb::data::engineer_features(records, schema);
  std::size_t counts[qcb::data::kSeverityClasses] = {};
  for (int v : d.y) ++counts[v];
  std::cout << "wrote " << records.size() << " records to " << a.out << " (";
  for (int k = 0; k < qcb::data::kSeverityClasses; ++k)
    std::cout << (k ? ", " : "") << qcb::data::to_string(static_cast<qcb::data::Severity>(k)) << ' ' << counts[k];
  std::cout << ")\n";
  return kExitOk;
}

int cmd_run(const RunArgs& a) {
  namespace ev = qcb::eval;
  const auto format = ev::parse_report_format(a.format);
  const auto schema = qcb::data::CrimeSchema::default_schema();
  const auto records = qcb::data::ingest_csv(a.data, schema);
  auto dataset = qcb::data::engineer_features(records, schema);
  dataset = qcb::data::select_features(dataset, a.top_features);

  qcb::optimize::OptBudget budget;
  budget.max_evals = a.max_evals;
  const auto models = ev::select_models(ev::default_registry(budget), a.models);

  ev::CvPlan plan;
  plan.n_folds = a.folds;
  plan.seeds.clear();
  for (int s = 0; s < a.seeds; ++s) plan.seeds.push_back(static_cast<std::uint64_t>(s));
  plan.holdout_fraction = a.holdout;

  ev::RunOptions opts;
  opts.master_seed = a.master_seed;
  opts.reference = a.reference;
  opts.parallel = !a.serial;

  const auto report = ev::run_benchmark(dataset, models, plan, opts);
  for (const auto& p : ev::emit_report(report, a.out_dir, format)) std::cout << "wrote " << p.string() << '\n';
  for (const auto& m : report.models)
    std::cout << m.id << "  acc " << m.accuracy.mean << " +- " << m.accuracy.half_width << "  f1 " << m.f1.mean
              << (m.cells_failed ? "  failed cells " + std::to_string(m.cells_failed) : "") << '\n';
  if (const int failed = report.failed_cells(); failed > 0) {
    std::cerr << "qcb: " << failed << " cell(s) failed; see report\n";
    return kExitPartial;
  }
  return kExitOk;
}

int cmd_expressibility(const ExprArgs& a) {
  std::vector<qcb::eval::ExpressibilityPoint> points;
  for (int l = 1; l <= a.max_layers; ++l) {
    qcb::circuits::CircuitConfig cfg;
    cfg.family = qcb::circuits::Family::VQC;
    cfg.n_qubits = a.qubits;
    cfg.layers = l;
    const auto r = qcb::circuits::expressibility(cfg, a.pairs, a.seed);
    points.push_back({a.qubits, l, r.score, r.kl_divergence, r.n_pairs});
    std::cout << "layers " << l << "  score " << r.score << "  kl " << r.kl_divergence
              << (r.low_precision ? "  (low precision)" : "") << '\n';
  }
  qcb::eval::write_text(a.out, qcb::eval::expressibility_csv(points));
  std::cout << "wrote " << a.out << '\n';
  return kExitOk;
}

int cmd_report(const ReportArgs& a) {
  const auto report = qcb::eval::load_report(a.in);
  for (const auto& p : qcb::eval::emit_report(report, a.out_dir, qcb::eval::parse_report_format(a.format)))
    std::cout << "wrote " << p.string() << '\n';
  return report.failed_cells() > 0 ? kExitPartial : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum/classical crime-severity benchmark"};
  app.require_subcommand(1);

  SynthArgs sa;
  auto* synth = app.add_subcommand("synth", "Write a seeded synthetic crime-count CSV");
  synth->add_option("--units", sa.units, "Reporting units")->check(CLI::PositiveNumber);
  synth->add_option("--years", sa.years, "Years per unit")->check(CLI::PositiveNumber);
  synth->add_option("--seed", sa.seed, "Generator seed");
  synth->add_option("--out", sa.out, "Output CSV path");

  RunArgs ra;
  auto* run = app.add_subcommand("run", "Cross-validate the model registry on a crime CSV");
  run->add_option("--data", ra.data, "Input CSV")->required();
  run->add_option("--models", ra.models, "'all' or comma-separated model ids");
  run->add_option("--folds", ra.folds, "Folds per seed");
  run->add_option("--seeds", ra.seeds, "Number of CV seeds")->check(CLI::PositiveNumber);
  run->add_option("--master-seed", ra.master_seed, "Master seed for every random stream");
  run->add_option("--out-dir", ra.out_dir, "Report directory");
  run->add_option("--report-format", ra.format, "json, csv or both");
  run->add_option("--holdout", ra.holdout, "Test fraction for a single stratified split per seed (e.g. 0.2)")
      ->check(CLI::Range(0.0, 1.0));
  run->add_option("--top-features", ra.top_features, "Features kept by mutual-information ranking");
  run->add_option("--max-evals", ra.max_evals, "Optimizer evaluation budget for circuit training")
      ->check(CLI::PositiveNumber);
  run->add_option("--reference", ra.reference, "Model id used for speedup and gap");
  run->add_flag("--serial", ra.serial, "Run cells on one thread");

  ExprArgs ea;
  auto* expr = app.add_subcommand("expressibility", "Expressibility of the VQC ansatz versus layer count");
  expr->add_option("--qubits", ea.qubits, "Qubits");
  expr->add_option("--max-layers", ea.max_layers, "Largest layer count")->check(CLI::PositiveNumber);
  expr->add_option("--pairs", ea.pairs, "Sampled parameter pairs")->check(CLI::PositiveNumber);
  expr->add_option("--seed", ea.seed, "Sampling seed");
  expr->add_option("--out", ea.out, "Output CSV path");

  ReportArgs pa;
  auto* rep = app.add_subcommand("report", "Re-render a stored JSON report");
  rep->add_option("--in", pa.in, "report.json")->required();
  rep->add_option("--out-dir", pa.out_dir, "Output directory");
  rep->add_option("--report-format", pa.format, "json, csv or both");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*synth) return cmd_synth(sa);
    if (*run) return cmd_run(ra);
    if (*expr) return cmd_expressibility(ea);
    if (*rep) return cmd_report(pa);
  } catch (const qcb::DataError& e) {
    std::cerr << "qcb: data error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::invalid_argument& e) {
    std::cerr << "qcb: usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "qcb: error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}
