// Serial reference versus OpenMP kernels on benchmark-sized inputs.

#include <chrono>
#include <cstdio>
#include <functional>
#include <numbers>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qcb/circuits.hpp"
#include "qcb/qmodels.hpp"
#include "qcb/rng.hpp"

namespace {

double seconds(const std::function<void()>& fn, int reps) {
  fn();  // warm-up
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < reps; ++i) fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / reps;
}

qcb::Matrix random_angles(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  qcb::Rng rng(seed);
  qcb::Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rng.uniform(0.0, std::numbers::pi);
  return m;
}

void row(const char* name, double serial, double parallel, bool same) {
  std::printf("%-28s %10.4f ms %10.4f ms %7.2fx  %s\n", name, serial * 1e3, parallel * 1e3, serial / parallel,
              same ? "identical" : "MISMATCH");
}

}  // namespace

int main() {
  using namespace qcb;
  int threads = 1;
#ifdef _OPENMP
  threads = omp_get_max_threads();
#endif
  std::printf("threads: %d\n%-28s %13s %13s %8s\n", threads, "kernel", "serial", "openmp", "speedup");

  const auto X6 = random_angles(288, 6, 1);
  circuits::CircuitConfig vqc{circuits::Family::VQC, 6, 3, std::nullopt};
  const auto theta = random_angles(1, 18, 2);
  const auto th = theta.row(0);
  {
    Matrix a, b;
    const double s = seconds([&] { a = qmodels::vqc_features_serial(vqc, th, X6); }, 5);
    const double p = seconds([&] { b = qmodels::vqc_features(vqc, th, X6); }, 5);
    row("vqc_features 6q3l x288", s, p, a == b);
  }

  circuits::CircuitConfig qaoa{circuits::Family::QAOA, 6, 3, std::nullopt};
  const std::vector<double> zero(6, 0.0);
  const auto h = circuits::make_cost_hamiltonian(nullptr, 6, zero);
  const auto ang = random_angles(1, 36, 3);
  const auto gamma = ang.row(0).subspan(0, 18), beta = ang.row(0).subspan(18, 18);
  {
    Matrix a, b;
    const double s = seconds([&] { a = qmodels::qaoa_features_serial(qaoa, h, gamma, beta, X6); }, 5);
    const double p = seconds([&] { b = qmodels::qaoa_features(qaoa, h, gamma, beta, X6); }, 5);
    row("qaoa_features 6q3l x288", s, p, a == b);
  }

  const auto X4 = random_angles(230, 4, 4);
  {
    Matrix a, b;
    const double s = seconds([&] { a = qmodels::quantum_kernel_matrix_serial(X4, X4); }, 2);
    const double p = seconds([&] { b = qmodels::quantum_kernel_matrix(X4, X4); }, 2);
    row("kernel matrix 230x230 4q", s, p, a == b);
  }

  {
    circuits::CircuitConfig cfg{circuits::Family::VQC, 4, 3, std::nullopt};
    circuits::ExpressibilityResult a, b;
    const double s = seconds([&] { a = circuits::expressibility(cfg, 5000, 0, false); }, 1);
    const double p = seconds([&] { b = circuits::expressibility(cfg, 5000, 0, true); }, 1);
    row("expressibility 4q3l 5000", s, p, a.kl_divergence == b.kl_divergence);
  }
  return 0;
}
