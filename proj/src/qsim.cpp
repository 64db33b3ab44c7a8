#include "qcb/qsim.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include "qcb/errors.hpp"

namespace qcb::qsim {

namespace {

void check_qubit_count(int n) {
  if (n < 1 || n > kMaxQubits)
    throw ConfigError("qubit count " + std::to_string(n) + " outside [1, " + std::to_string(kMaxQubits) + "]");
}

void check_qubit(int q, int n) {
  if (q < 0 || q >= n)
    throw UsageError("qubit index " + std::to_string(q) + " outside register of " + std::to_string(n));
}

// Applies a 2x2 unitary [[m00, m01], [m10, m11]] to qubit q.
void apply_single(std::vector<Amplitude>& a, int q, Amplitude m00, Amplitude m01, Amplitude m10, Amplitude m11) {
  const std::size_t stride = std::size_t{1} << q;
  const std::size_t dim = a.size();
  for (std::size_t base = 0; base < dim; base += 2 * stride) {
    for (std::size_t off = 0; off < stride; ++off) {
      const std::size_t i0 = base + off;
      const std::size_t i1 = i0 + stride;
      const Amplitude v0 = a[i0];
      const Amplitude v1 = a[i1];
      a[i0] = m00 * v0 + m01 * v1;
      a[i1] = m10 * v0 + m11 * v1;
    }
  }
}

}  // namespace

std::string to_string(GateKind kind) {
  switch (kind) {
    case GateKind::RY: return "RY";
    case GateKind::RZ: return "RZ";
    case GateKind::H: return "H";
    case GateKind::X: return "X";
    case GateKind::CNOT: return "CNOT";
    case GateKind::ZZPhase: return "ZZ";
    case GateKind::XMixer: return "XMIX";
  }
  return "?";
}

GateOp GateOp::inverse() const noexcept {
  GateOp g = *this;
  switch (kind) {
    case GateKind::RY:
    case GateKind::RZ:
    case GateKind::ZZPhase:
    case GateKind::XMixer: g.angle = -angle; break;
    default: break;
  }
  return g;
}

QuantumState QuantumState::zero(int n_qubits) {
  check_qubit_count(n_qubits);
  std::vector<Amplitude> amps(std::size_t{1} << n_qubits);
  amps[0] = 1.0;
  return {n_qubits, std::move(amps)};
}

QuantumState QuantumState::plus(int n_qubits) {
  check_qubit_count(n_qubits);
  const std::size_t dim = std::size_t{1} << n_qubits;
  return {n_qubits, std::vector<Amplitude>(dim, Amplitude(1.0 / std::sqrt(static_cast<double>(dim)), 0.0))};
}

QuantumState QuantumState::from_amplitudes(std::vector<Amplitude> amplitudes) {
  const std::size_t dim = amplitudes.size();
  if (dim < 2 || (dim & (dim - 1)) != 0) throw UsageError("amplitude count must be a power of two >= 2");
  const int n = std::countr_zero(dim);
  check_qubit_count(n);
  double norm = 0.0;
  for (const auto& v : amplitudes) norm += std::norm(v);
  if (std::abs(norm - 1.0) > 1e-10) throw UsageError("amplitudes are not normalized");
  return {n, std::move(amplitudes)};
}

double QuantumState::norm_sq() const noexcept {
  double s = 0.0;
  for (const auto& v : amps_) s += std::norm(v);
  return s;
}

void validate_gate(const GateOp& gate, int n_qubits) {
  check_qubit(gate.q0, n_qubits);
  if (gate.two_qubit()) {
    check_qubit(gate.q1, n_qubits);
    if (gate.q0 == gate.q1) throw UsageError(to_string(gate.kind) + " needs two distinct qubits");
  } else if (gate.q1 != -1) {
    throw UsageError(to_string(gate.kind) + " acts on exactly one qubit");
  }
}

void QuantumState::apply(const GateOp& gate) {
  validate_gate(gate, n_qubits_);
  auto& a = amps_;
  switch (gate.kind) {
    case GateKind::RY: {
      const double c = std::cos(gate.angle / 2), s = std::sin(gate.angle / 2);
      apply_single(a, gate.q0, c, -s, s, c);
      break;
    }
    case GateKind::RZ: {
      const Amplitude p0 = std::polar(1.0, -gate.angle / 2);
      const Amplitude p1 = std::polar(1.0, gate.angle / 2);
      const std::size_t mask = std::size_t{1} << gate.q0;
      for (std::size_t i = 0; i < a.size(); ++i) a[i] *= (i & mask) ? p1 : p0;
      break;
    }
    case GateKind::H: {
      const double r = 1.0 / std::numbers::sqrt2;
      apply_single(a, gate.q0, r, r, r, -r);
      break;
    }
    case GateKind::X: apply_single(a, gate.q0, 0.0, 1.0, 1.0, 0.0); break;
    case GateKind::XMixer: {
      const double c = std::cos(gate.angle);
      const Amplitude s(0.0, -std::sin(gate.angle));
      apply_single(a, gate.q0, c, s, s, c);
      break;
    }
    case GateKind::CNOT: {
      const std::size_t cmask = std::size_t{1} << gate.q0;
      const std::size_t tmask = std::size_t{1} << gate.q1;
      for (std::size_t i = 0; i < a.size(); ++i)
        if ((i & cmask) && !(i & tmask)) std::swap(a[i], a[i | tmask]);
      break;
    }
    case GateKind::ZZPhase: {
      const Amplitude same = std::polar(1.0, -gate.angle);
      const Amplitude diff = std::polar(1.0, gate.angle);
      const int b0 = gate.q0, b1 = gate.q1;
      for (std::size_t i = 0; i < a.size(); ++i) a[i] *= (((i >> b0) ^ (i >> b1)) & 1U) ? diff : same;
      break;
    }
  }
}

void QuantumState::apply(std::span<const GateOp> gates) {
  for (const auto& g : gates) apply(g);
}

QuantumState init_zero(int n_qubits) { return QuantumState::zero(n_qubits); }
QuantumState init_plus(int n_qubits) { return QuantumState::plus(n_qubits); }

QuantumState apply_gate(QuantumState state, const GateOp& gate) {
  state.apply(gate);
  return state;
}

QuantumState run_circuit(QuantumState state, std::span<const GateOp> gates) {
  state.apply(gates);
  return state;
}

double expectation_z(const QuantumState& state, int qubit) {
  check_qubit(qubit, state.n_qubits());
  const std::size_t mask = std::size_t{1} << qubit;
  double e = 0.0;
  const auto a = state.amplitudes();
  for (std::size_t i = 0; i < a.size(); ++i) e += (i & mask) ? -std::norm(a[i]) : std::norm(a[i]);
  return std::clamp(e, -1.0, 1.0);
}

double expectation_x(const QuantumState& state, int qubit) {
  check_qubit(qubit, state.n_qubits());
  const std::size_t mask = std::size_t{1} << qubit;
  const auto a = state.amplitudes();
  double e = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!(i & mask)) e += 2.0 * (std::conj(a[i]) * a[i | mask]).real();
  return std::clamp(e, -1.0, 1.0);
}

double expectation_x_via_hadamard(const QuantumState& state, int qubit) {
  check_qubit(qubit, state.n_qubits());
  return expectation_z(apply_gate(state, GateOp::h(qubit)), qubit);
}

double overlap_sq(const QuantumState& a, const QuantumState& b) {
  if (a.n_qubits() != b.n_qubits()) throw UsageError("overlap_sq: qubit counts differ");
  Amplitude s = 0.0;
  const auto x = a.amplitudes();
  const auto y = b.amplitudes();
  for (std::size_t i = 0; i < x.size(); ++i) s += std::conj(x[i]) * y[i];
  return std::min(1.0, std::norm(s));
}

}  // namespace qcb::qsim
