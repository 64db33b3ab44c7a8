#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace qcb::qsim {

using Amplitude = std::complex<double>;

inline constexpr int kMaxQubits = 12;

enum class GateKind { RY, RZ, H, X, CNOT, ZZPhase, XMixer };

std::string to_string(GateKind kind);

/// One gate of a circuit. For CNOT, `q0` is the control and `q1` the target;
/// for ZZPhase both are acted on symmetrically. Single-qubit gates use `q0`.
///
/// Conventions (qubit k is bit k of the basis index):
///   RY(a)      = [[cos a/2, -sin a/2], [sin a/2, cos a/2]]
///   RZ(a)      = diag(e^{-ia/2}, e^{ia/2})
///   ZZPhase(a) = exp(-i a Z_q0 Z_q1)
///   XMixer(a)  = exp(-i a X_q0)
struct GateOp {
  GateKind kind = GateKind::H;
  int q0 = 0;
  int q1 = -1;
  double angle = 0.0;

  static GateOp ry(int q, double a) { return {GateKind::RY, q, -1, a}; }
  static GateOp rz(int q, double a) { return {GateKind::RZ, q, -1, a}; }
  static GateOp h(int q) { return {GateKind::H, q, -1, 0.0}; }
  static GateOp x(int q) { return {GateKind::X, q, -1, 0.0}; }
  static GateOp cnot(int control, int target) { return {GateKind::CNOT, control, target, 0.0}; }
  static GateOp zz(int a, int b, double angle) { return {GateKind::ZZPhase, a, b, angle}; }
  static GateOp x_mixer(int q, double a) { return {GateKind::XMixer, q, -1, a}; }

  bool two_qubit() const noexcept { return kind == GateKind::CNOT || kind == GateKind::ZZPhase; }
  /// Gate whose product with this one is the identity.
  GateOp inverse() const noexcept;

  bool operator==(const GateOp&) const = default;
};

/// Dense amplitude vector over 2^n basis states.
class QuantumState {
 public:
  /// |0...0>. Throws ConfigError unless 1 <= n_qubits <= kMaxQubits.
  static QuantumState zero(int n_qubits);
  /// |+>^n.
  static QuantumState plus(int n_qubits);
  /// Takes ownership of amplitudes; the length must be a power of two and the
  /// vector normalized within 1e-10.
  static QuantumState from_amplitudes(std::vector<Amplitude> amplitudes);

  int n_qubits() const noexcept { return n_qubits_; }
  std::size_t dim() const noexcept { return amps_.size(); }
  std::span<const Amplitude> amplitudes() const noexcept { return amps_; }
  const Amplitude& operator[](std::size_t i) const { return amps_[i]; }
  double norm_sq() const noexcept;

  /// In-place application. Throws UsageError for indices outside the register.
  void apply(const GateOp& gate);
  void apply(std::span<const GateOp> gates);

 private:
  QuantumState(int n, std::vector<Amplitude> amps) : n_qubits_(n), amps_(std::move(amps)) {}

  int n_qubits_ = 0;
  std::vector<Amplitude> amps_;
};

QuantumState init_zero(int n_qubits);
QuantumState init_plus(int n_qubits);

/// Pure form of QuantumState::apply.
QuantumState apply_gate(QuantumState state, const GateOp& gate);
QuantumState run_circuit(QuantumState state, std::span<const GateOp> gates);

void validate_gate(const GateOp& gate, int n_qubits);

double expectation_z(const QuantumState& state, int qubit);
/// <X_q> by pairing amplitudes that differ in bit q.
double expectation_x(const QuantumState& state, int qubit);
/// <X_q> computed as <Z_q> after a Hadamard on q.
double expectation_x_via_hadamard(const QuantumState& state, int qubit);

/// |<a|b>|^2. Throws UsageError on dimension mismatch.
double overlap_sq(const QuantumState& a, const QuantumState& b);

}  // namespace qcb::qsim
