// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failing criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>

#include <Eigen/Dense>

#include "oracle.hpp"
#include "qcb/circuits.hpp"
#include "qcb/classical.hpp"
#include "qcb/data.hpp"
#include "qcb/harness.hpp"
#include "qcb/qmodels.hpp"
#include "qcb/registry.hpp"
#include "qcb/report.hpp"
#include "qcb/rng.hpp"
#include "qcb/stats.hpp"

#ifndef QCB_CLI_PATH
#error "QCB_CLI_PATH must name the qcb executable"
#endif

using namespace qcb;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!o.pass) ++failures;
  std::printf("%s [%2d] %s (%s; %.2fs)\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str(), s);
  std::fflush(stdout);
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

data::LabeledDataset synthetic_dataset() {
  const auto schema = data::CrimeSchema::default_schema();
  return data::select_features(data::engineer_features(data::synthesize({}, schema), schema), 10);
}

// Encoded inputs as the quantum pipelines see them.
Matrix encoded(const Matrix& X, int n_qubits) {
  const auto z = classical::fit_scaler(classical::ScalerKind::ZSCORE, X);
  const Matrix Z = classical::apply_scaler(z, X);
  const auto a = classical::fit_scaler(classical::ScalerKind::ANGLE, Z);
  return classical::apply_scaler(a, Z).left_columns(static_cast<std::size_t>(n_qubits));
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string("\"") + QCB_CLI_PATH + "\" " + args + " > /dev/null";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

Outcome simulator_oracle() {
  Rng rng(2024);
  double worst = 0;
  const auto t0 = std::chrono::steady_clock::now();
  for (int c = 0; c < 200; ++c) {
    const int depth = 1 + static_cast<int>(rng.below(10));
    std::vector<qsim::GateOp> gates;
    for (int g = 0; g < depth; ++g) {
      const int a = static_cast<int>(rng.below(3));
      const int b = (a + 1 + static_cast<int>(rng.below(2))) % 3;
      const double t = rng.uniform(-2 * std::numbers::pi, 2 * std::numbers::pi);
      switch (rng.below(7)) {
        case 0: gates.push_back(qsim::GateOp::ry(a, t)); break;
        case 1: gates.push_back(qsim::GateOp::rz(a, t)); break;
        case 2: gates.push_back(qsim::GateOp::h(a)); break;
        case 3: gates.push_back(qsim::GateOp::x(a)); break;
        case 4: gates.push_back(qsim::GateOp::cnot(a, b)); break;
        case 5: gates.push_back(qsim::GateOp::zz(a, b, t)); break;
        default: gates.push_back(qsim::GateOp::x_mixer(a, t)); break;
      }
    }
    const auto sim = qsim::run_circuit(qsim::init_zero(3), gates);
    worst = std::max(worst, oracle::phase_aligned_error(oracle::run(gates, oracle::zero_state(3), 3), sim.amplitudes()));
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {worst <= 1e-10 && s < 5.0, "max error " + fmt("%.2e", worst) + ", " + fmt("%.3f", s) + "s"};
}

Outcome closed_forms() {
  Rng rng(17);
  circuits::CircuitConfig cfg{circuits::Family::VQC, 1, 1, std::nullopt};
  Matrix X(100, 1), A(100, 1), B(100, 1);
  for (std::size_t i = 0; i < 100; ++i) {
    X(i, 0) = rng.uniform(-std::numbers::pi, std::numbers::pi);
    A(i, 0) = rng.uniform(0, std::numbers::pi);
    B(i, 0) = rng.uniform(0, std::numbers::pi);
  }
  const std::vector<double> theta{0.0};
  const auto F = qmodels::vqc_features(cfg, theta, X);
  const auto K = qmodels::quantum_kernel_matrix(A, B);
  double ev = 0, ek = 0;
  for (std::size_t i = 0; i < 100; ++i) {
    ev = std::max(ev, std::abs(F(i, 0) - std::cos(X(i, 0))));
    const double c = std::cos(A(i, 0) - B(i, 0));
    ek = std::max(ek, std::abs(K(i, i) - c * c));
  }
  return {ev <= 1e-10 && ek <= 1e-10, "VQC " + fmt("%.2e", ev) + ", kernel " + fmt("%.2e", ek)};
}

Outcome kernel_properties() {
  const auto d = synthetic_dataset();
  std::vector<std::size_t> idx(20);
  for (std::size_t i = 0; i < 20; ++i) idx[i] = i * 14;
  const Matrix E = encoded(d.X, 4).select_rows(idx);
  const auto K = qmodels::quantum_kernel_matrix(E, E);
  double asym = 0, diag = 0;
  Eigen::MatrixXd M(20, 20);
  for (std::size_t i = 0; i < 20; ++i) {
    diag = std::max(diag, std::abs(K(i, i) - 1.0));
    for (std::size_t j = 0; j < 20; ++j) {
      asym = std::max(asym, std::abs(K(i, j) - K(j, i)));
      M(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = K(i, j);
    }
  }
  const double lmin = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(M).eigenvalues().minCoeff();
  return {asym <= 1e-12 && diag <= 1e-10 && lmin >= -1e-8,
          "asym " + fmt("%.1e", asym) + ", diag " + fmt("%.1e", diag) + ", min eig " + fmt("%.2e", lmin)};
}

Outcome parameter_counts() {
  const auto reg = eval::default_registry();
  const std::pair<const char*, int> expected[] = {{"vqc_4q2l", 8}, {"vqc_6q3l", 18}, {"qaoa_4q2l", 16}, {"qaoa_6q3l", 36}};
  std::string detail;
  bool ok = true;
  for (const auto& [id, n] : expected) {
    for (const auto& m : reg) {
      if (m.id != id) continue;
      auto model = m.make();
      const auto* q = dynamic_cast<const qmodels::QuantumPipeline*>(model.get());
      const int got = q ? q->circuit_param_count() : -1;
      ok = ok && got == n;
      detail += std::string(detail.empty() ? "" : ", ") + id + "=" + std::to_string(got);
    }
  }
  return {ok, detail};
}

Outcome qaoa_identity() {
  const auto d = synthetic_dataset();
  std::size_t checked = 0;
  bool ok = true;
  for (auto [n, p] : {std::pair{4, 2}, std::pair{6, 3}}) {
    const Matrix E = encoded(d.X, n);
    circuits::CircuitConfig cfg{circuits::Family::QAOA, n, p, circuits::build_correlation_graph(E)};
    std::vector<double> means(static_cast<std::size_t>(n), 0.0);
    const auto h = circuits::make_cost_hamiltonian(&*cfg.correlation, n, means);
    const std::vector<double> zero(static_cast<std::size_t>(n * p), 0.0);
    const auto F = qmodels::qaoa_features(cfg, h, zero, zero, E);
    for (std::size_t r = 0; r < F.rows(); ++r)
      for (int k = 0; k < 2 * n; ++k) {
        ok = ok && F(r, static_cast<std::size_t>(k)) == (k < n ? 0.0 : 1.0);
        ++checked;
      }
  }
  return {ok, std::to_string(checked) + " feature values, exact"};
}

Outcome severity_grid() {
  const double eps = 1e-9;
  const std::vector<double> rs{0, 0.05 - eps, 0.05, 0.05 + eps, 0.15 - eps, 0.15, 0.15 + eps, 0.3 - eps, 0.3, 0.3 + eps, 1};
  const std::vector<double> cs{0, 4999, 5000, 5001, 14999, 15000, 15001, 29999, 30000, 30001};
  int cases = 0, bad = 0;
  for (double r : rs)
    for (double c : cs) {
      const int tier_r = (r > 0.05) + (r > 0.15) + (r > 0.3);
      const int tier_c = (c > 5000) + (c > 15000) + (c > 30000);
      const int want = std::max(tier_r, tier_c);
      bad += static_cast<int>(data::severity_label({r, c})) != want;
      ++cases;
    }
  return {bad == 0, std::to_string(cases) + " grid points, " + std::to_string(bad) + " mismatches"};
}

Outcome spearman_and_pairs() {
  Rng rng(99);
  double worst = 0;
  for (int t = 0; t < 100; ++t) {
    std::vector<double> x(25), y(25);
    for (std::size_t i = 0; i < 25; ++i) {
      x[i] = static_cast<double>(rng.below(8));
      y[i] = std::round(x[i] * rng.uniform(-1, 1) * 3) / 2;
    }
    const auto s = circuits::spearman(x, y);
    if (s.degenerate) continue;
    worst = std::max(worst, std::abs(s.rho - oracle::pearson(oracle::count_ranks(x), oracle::count_ranks(y))));
  }
  const auto d = synthetic_dataset();
  const auto g = circuits::build_correlation_graph(d.X);
  std::vector<std::pair<int, int>> brute, got;
  for (int i = 0; i < g.n_features; ++i)
    for (int j = i + 1; j < g.n_features; ++j)
      if (std::abs(g.rho(static_cast<std::size_t>(i), static_cast<std::size_t>(j))) > 0.5) brute.emplace_back(i, j);
  for (const auto& p : g.pairs) got.emplace_back(p.i, p.j);
  std::sort(got.begin(), got.end());
  return {worst <= 1e-12 && got == brute && !got.empty(),
          "max rho error " + fmt("%.1e", worst) + ", " + std::to_string(got.size()) + " pairs"};
}

Outcome statistics() {
  const std::vector<double> two{0.8, 0.9};
  const auto ci = stats::confidence_interval(two);
  const double want_hw = 12.706 * std::sqrt(0.005) / std::sqrt(2.0);
  const std::vector<double> a{1.5, 2.5, 2.0, 3.0, 2.0}, zero(5, 1.0);
  const auto t = stats::paired_ttest(a, zero);
  double sd = 0;
  for (double v : a) sd += (v - 1 - 1.2) * (v - 1 - 1.2);
  sd = std::sqrt(sd / 4);
  const double want_t = 1.2 / (sd / std::sqrt(5.0));
  double p_err = std::abs(t.p - oracle::t_two_sided_p(t.t, 4));
  for (double tv : {0.3, 1.1, 2.4, 4.0})
    for (double df : {1.0, 4.0, 24.0}) p_err = std::max(p_err, std::abs(stats::student_t_two_sided_p(tv, df) - oracle::t_two_sided_p(tv, df)));
  const bool ok = std::abs(ci.half_width - want_hw) <= 1e-3 && std::abs(t.t - want_t) < 1e-9 && p_err <= 1e-6 &&
                  std::abs(t.cohens_d - 1.2 / sd) < 1e-12;
  return {ok, "CI half-width " + fmt("%.4f", ci.half_width) + ", t " + fmt("%.4f", t.t) + ", max p error " +
                  fmt("%.1e", p_err) + ", d " + fmt("%.4f", t.cohens_d)};
}

Outcome end_to_end(const fs::path& work) {
  fs::create_directories(work);
  const auto csv = (work / "crime.csv").string();
  const auto t0 = std::chrono::steady_clock::now();
  if (int rc = run_cli("synth --seed 0 --out \"" + csv + "\""); rc != 0) return {false, "synth exit " + std::to_string(rc)};
  const auto run_args = "run --data \"" + csv + "\" --models all --folds 5 --seeds 5 --master-seed 0 --report-format both --out-dir ";
  const int rc1 = run_cli(run_args + "\"" + (work / "run1").string() + "\"");
  const double first = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const int rc2 = run_cli(run_args + "\"" + (work / "run2").string() + "\"");
  if (rc1 != 0 || rc2 != 0) return {false, "run exit codes " + std::to_string(rc1) + "/" + std::to_string(rc2)};

  const auto r1 = eval::load_report(work / "run1" / "report.json");
  const auto r2 = eval::load_report(work / "run2" / "report.json");
  const auto* dummy = r1.find("majority");
  bool baselines = dummy != nullptr;
  double worst_margin = 1.0;
  for (const auto& m : r1.models) {
    if (m.category != "classical") continue;
    worst_margin = std::min(worst_margin, m.accuracy.mean - dummy->accuracy.mean);
  }
  baselines = baselines && worst_margin >= 0.20;
  bool qaoa = true;
  for (const char* id : {"qaoa_4q2l", "qaoa_6q3l"}) {
    const auto* m = r1.find(id);
    qaoa = qaoa && m && m->cells_ok == 25 && m->cells_failed == 0;
  }
  const bool strat = r1.stratification_ok && r1.cells.size() == 17 * 25;
  const bool same = eval::report_without_timing(r1) == eval::report_without_timing(r2);
  const bool fast = first < 600.0;
  return {fast && baselines && qaoa && strat && same,
          "first run " + fmt("%.0f", first) + "s, dummy " + fmt("%.3f", dummy ? dummy->accuracy.mean : 0) +
              ", min classical margin " + fmt("%.3f", worst_margin) + ", QAOA 25/25 " + (qaoa ? "yes" : "no") +
              ", stratified " + (strat ? "yes" : "no") + ", reproducible " + (same ? "yes" : "no")};
}

Outcome expressibility_trend() {
  circuits::CircuitConfig cfg{circuits::Family::VQC, 4, 1, std::nullopt};
  double s[3];
  for (int l = 1; l <= 3; ++l) {
    cfg.layers = l;
    s[l - 1] = circuits::expressibility(cfg, 5000, 0).score;
  }
  return {s[0] < s[1] && s[1] < s[2],
          "L1 " + fmt("%.3f", s[0]) + ", L2 " + fmt("%.3f", s[1]) + ", L3 " + fmt("%.3f", s[2])};
}

Outcome no_leakage() {
  const auto d = synthetic_dataset();
  eval::CvPlan plan;
  const auto folds = eval::plan_folds(d.y, plan, 0, 0);
  std::vector<std::size_t> train, test;
  for (std::size_t i = 0; i < folds.size(); ++i) (folds[i] == 0 ? test : train).push_back(i);

  // Shuffle the test rows among the test positions.
  std::vector<std::size_t> perm = test;
  Rng rng(5);
  rng.shuffle(perm.begin(), perm.end());
  Matrix Xp = d.X;
  Labels yp = d.y;
  for (std::size_t k = 0; k < test.size(); ++k) {
    for (std::size_t c = 0; c < d.X.cols(); ++c) Xp(test[k], c) = d.X(perm[k], c);
    yp[test[k]] = d.y[perm[k]];
  }

  int checked = 0;
  std::string bad;
  for (const auto& spec : eval::default_registry()) {
    auto a = spec.make();
    auto b = spec.make();
    a->fit(d.X.select_rows(train), select_labels(d.y, train), 42);
    b->fit(Xp.select_rows(train), select_labels(yp, train), 42);
    if (a->checksum() != b->checksum()) bad += " " + spec.id;
    ++checked;
  }
  return {checked == 17 && bad.empty(), std::to_string(checked) + " models" + (bad.empty() ? "" : ", changed:" + bad)};
}

Outcome hybrid_structure(const fs::path& work) {
  const auto path = work / "run1" / "report.json";
  if (!fs::exists(path)) return {false, "criterion 9 report missing"};
  const auto r = eval::load_report(path);
  bool ok = true;
  std::string detail;
  for (const char* id : {"q_rf", "q_svm", "q_logreg", "q_dectree"}) {
    const auto* m = r.find(id);
    ok = ok && m && m->intermediate_features == 6;
  }
  for (const char* id : {"pca_vqc", "pca_qaoa", "pca_qkernel"}) {
    const auto* m = r.find(id);
    ok = ok && m && m->intermediate_features == 4;
  }
  const auto* qc = r.find("q_rf");
  const auto* cq = r.find("pca_vqc");
  detail = "Q->C features " + std::to_string(qc ? qc->intermediate_features : -1) + ", C->Q components " +
           std::to_string(cq ? cq->intermediate_features : -1);
  return {ok, detail};
}

}  // namespace

int main(int argc, char** argv) {
  const fs::path work = argc > 1 ? fs::path(argv[1]) : fs::temp_directory_path() / "qcb_acceptance";
  criterion(1, "simulator matches dense matrix-chain oracle on 200 random 3-qubit circuits", simulator_oracle);
  criterion(2, "single-qubit VQC feature = cos(x) and kernel = cos^2(x - x')", closed_forms);
  criterion(3, "20x20 quantum kernel symmetric, unit diagonal, PSD", kernel_properties);
  criterion(4, "circuit parameter counts 8/18/16/36", parameter_counts);
  criterion(5, "QAOA with zero angles yields [0..0, 1..1]", qaoa_identity);
  criterion(6, "severity labeling on the threshold grid", severity_grid);
  criterion(7, "Spearman = rank-then-Pearson; pair set = threshold scan", spearman_and_pairs);
  criterion(8, "paired t-test, CI and Cohen's d against textbook values", statistics);
  criterion(9, "end-to-end synth + run (17 models, 5x5 CV)", [&] { return end_to_end(work); });
  criterion(10, "expressibility increases with layers (4q, 5000 pairs)", expressibility_trend);
  criterion(11, "permuting test rows leaves every fitted checksum unchanged", no_leakage);
  criterion(12, "hybrid metadata: 6 Q->C features, 4 C->Q components", [&] { return hybrid_structure(work); });
  std::printf("%d of 12 criteria failed\n", failures);
  return failures;
}
