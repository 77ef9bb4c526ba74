#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bds/qmath.hpp"
#include "bds/states.hpp"

namespace bds {

enum class GateKind { kR, kH, kSDagger, kU3, kCnot };

const char* gate_name(GateKind kind);
GateKind gate_kind_from_name(const std::string& name);

/// One gate application. `params` holds angles in radians: R takes its
/// rotation argument x (matrix [[cos x, -sin x], [sin x, cos x]]), U3 takes
/// (theta, phi, lambda). For CNOT, targets = {control, target}.
struct Gate {
  GateKind kind;
  std::vector<double> params;
  std::vector<std::size_t> targets;

  static Gate r(double x, std::size_t q) { return {GateKind::kR, {x}, {q}}; }
  static Gate h(std::size_t q) { return {GateKind::kH, {}, {q}}; }
  static Gate sdg(std::size_t q) { return {GateKind::kSDagger, {}, {q}}; }
  static Gate u3(double theta, double phi, double lambda, std::size_t q) {
    return {GateKind::kU3, {theta, phi, lambda}, {q}};
  }
  static Gate cnot(std::size_t control, std::size_t target) {
    return {GateKind::kCnot, {}, {control, target}};
  }

  void validate() const;
  /// 2x2 for single-qubit kinds; 4x4 with the control as the leading factor for CNOT.
  ComplexMatrix matrix() const;

  friend bool operator==(const Gate&, const Gate&) = default;
};

class Circuit {
 public:
  explicit Circuit(std::size_t n_qubits);
  Circuit(std::size_t n_qubits, std::vector<Gate> gates);

  Circuit& add(Gate gate);

  std::size_t n_qubits() const noexcept { return n_qubits_; }
  const std::vector<Gate>& gates() const noexcept { return gates_; }

  friend bool operator==(const Circuit&, const Circuit&) = default;

 private:
  std::size_t n_qubits_;
  std::vector<Gate> gates_;
};

/// Rotation angles fed to the preparation circuit, both in [0, pi].
struct AnglePair {
  double theta = 0.0;
  double alpha = 0.0;
};

AnglePair angles_from_spec(const BdsSpec& spec);
BdsSpec probs_from_angles(const AnglePair& angles);

/// Register roles of the preparation circuit.
namespace reg {
inline constexpr std::size_t kA = 0;
inline constexpr std::size_t kB = 1;
inline constexpr std::size_t kC = 2;
inline constexpr std::size_t kD = 3;
}  // namespace reg

/// Where the Bell-basis encoder (H followed by CNOT) sits on the output pair.
enum class EncoderWiring {
  /// H on c, CNOT c->d. Yields sum_jk sqrt(p_jk) |j>_a |k>_b |beta_jk>_cd.
  kHadamardOnC,
  /// H on d, CNOT d->c. Yields |beta_kj>_cd for register |j>_a |k>_b, so the
  /// c,d state only equals the target when p01 == p10.
  kHadamardOnD,
};

/// R(theta/2) on a, R(alpha/2) on b, CNOT a->c, CNOT b->d, then the encoder.
/// Only reaches product weights p_jk = x_j y_k (see probs_from_angles).
Circuit build_bds_circuit(const AnglePair& angles,
                          EncoderWiring wiring = EncoderWiring::kHadamardOnC);

/// Rotation of b conditioned on a: R(phi0) when a=0, R(phi1) when a=1, so
/// that cos^2(phi_j) = p_j0 / (p_j0 + p_j1).
struct ConditionalAngles {
  double theta = 0.0;
  double phi0 = 0.0;
  double phi1 = 0.0;
};

ConditionalAngles conditional_angles(const BdsSpec& spec);

/// Circuit whose output is sum_jk sqrt(p_jk) |j>|k>|beta_jk> for any spec.
/// Product specs give exactly the six-gate circuit above; otherwise R(alpha/2)
/// on b is replaced by R(u), CNOT a->b, R(v), CNOT a->b with
/// u = (phi0+phi1)/2, v = (phi0-phi1)/2.
Circuit build_bds_circuit(const BdsSpec& spec,
                          EncoderWiring wiring = EncoderWiring::kHadamardOnC);

using StateVector = std::vector<Complex>;

/// |index> on n qubits, qubit 0 most significant.
StateVector basis_state(std::size_t n_qubits, std::size_t index);

StateVector simulate_statevector(const Circuit& circuit, const StateVector& input);

/// The four-qubit output of the preparation circuit started from |0000>.
StateVector purification(const BdsSpec& spec,
                         EncoderWiring wiring = EncoderWiring::kHadamardOnC);

/// Reduced state of qubits c,d after running the preparation circuit.
DensityMatrix prepared_state(const BdsSpec& spec,
                             EncoderWiring wiring = EncoderWiring::kHadamardOnC);

enum class PauliBasis { kX = 1, kY = 2, kZ = 3 };

char basis_letter(PauliBasis basis);

struct QasmOptions {
  /// Logical qubit index -> physical qubit index. Empty means identity, except
  /// for four-qubit circuits where it defaults to a->1, b->3, c->2, d->4.
  std::map<std::size_t, std::size_t> layout;
  /// Logical qubit -> measurement basis; qubits absent here are not measured.
  std::map<std::size_t, PauliBasis> measure;
};

std::map<std::size_t, std::size_t> default_layout(std::size_t n_qubits);

/// OpenQASM 2.0 text. R(x) is emitted as u3(2x,0,0).
std::string to_qasm(const Circuit& circuit, const QasmOptions& options = {});

/// Compact rendering of an angle: multiples of pi/4 symbolically, otherwise
/// the shortest round-trip decimal.
std::string format_angle(double radians);

}  // namespace bds
