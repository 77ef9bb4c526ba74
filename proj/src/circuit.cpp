#include "bds/circuit.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

namespace bds {

const char* gate_name(GateKind kind) {
  switch (kind) {
    case GateKind::kR: return "R";
    case GateKind::kH: return "H";
    case GateKind::kSDagger: return "S_dagger";
    case GateKind::kU3: return "U3";
    case GateKind::kCnot: return "CNOT";
  }
  return "?";
}

GateKind gate_kind_from_name(const std::string& name) {
  for (GateKind k : {GateKind::kR, GateKind::kH, GateKind::kSDagger, GateKind::kU3,
                     GateKind::kCnot}) {
    if (name == gate_name(k)) return k;
  }
  throw Error(ErrorCode::kParse, "unknown gate kind '" + name + "'");
}

void Gate::validate() const {
  const std::size_t want_params = kind == GateKind::kR ? 1 : kind == GateKind::kU3 ? 3 : 0;
  if (params.size() != want_params) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::string(gate_name(kind)) + " has the wrong number of parameters");
  }
  const std::size_t want_targets = kind == GateKind::kCnot ? 2 : 1;
  if (targets.size() != want_targets) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::string(gate_name(kind)) + " has the wrong number of targets");
  }
  if (kind == GateKind::kCnot && targets[0] == targets[1]) {
    throw Error(ErrorCode::kDimensionMismatch, "CNOT control equals target");
  }
}

ComplexMatrix Gate::matrix() const {
  validate();
  const Complex i(0.0, 1.0);
  switch (kind) {
    case GateKind::kR: {
      const double c = std::cos(params[0]);
      const double s = std::sin(params[0]);
      return {{c, -s}, {s, c}};
    }
    case GateKind::kH: {
      const double r = 1.0 / std::sqrt(2.0);
      return {{r, r}, {r, -r}};
    }
    case GateKind::kSDagger:
      return {{1.0, 0.0}, {0.0, -i}};
    case GateKind::kU3: {
      const double c = std::cos(params[0] / 2.0);
      const double s = std::sin(params[0] / 2.0);
      const double phi = params[1];
      const double lambda = params[2];
      return {{c, -std::exp(i * lambda) * s},
              {std::exp(i * phi) * s, std::exp(i * (lambda + phi)) * c}};
    }
    case GateKind::kCnot: {
      ComplexMatrix p0 = ComplexMatrix::diagonal({1.0, 0.0});
      ComplexMatrix p1 = ComplexMatrix::diagonal({0.0, 1.0});
      return kron(p0, pauli(0)) + kron(p1, pauli(1));
    }
  }
  throw Error(ErrorCode::kParse, "unknown gate kind");
}

Circuit::Circuit(std::size_t n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits == 0) throw Error(ErrorCode::kDimensionMismatch, "circuit needs at least one qubit");
}

Circuit::Circuit(std::size_t n_qubits, std::vector<Gate> gates) : Circuit(n_qubits) {
  for (auto& g : gates) add(std::move(g));
}

Circuit& Circuit::add(Gate gate) {
  gate.validate();
  for (std::size_t t : gate.targets) {
    if (t >= n_qubits_) {
      throw Error(ErrorCode::kDimensionMismatch, "gate target outside the register");
    }
  }
  gates_.push_back(std::move(gate));
  return *this;
}

AnglePair angles_from_spec(const BdsSpec& spec) {
  spec.validate();
  auto angle = [](double p) { return 2.0 * std::acos(std::sqrt(std::clamp(p, 0.0, 1.0))); };
  return {angle(spec.p00 + spec.p01), angle(spec.p00 + spec.p10)};
}

BdsSpec probs_from_angles(const AnglePair& angles) {
  const double ca = std::cos(angles.theta / 2.0);
  const double sa = std::sin(angles.theta / 2.0);
  const double cb = std::cos(angles.alpha / 2.0);
  const double sb = std::sin(angles.alpha / 2.0);
  const double a0 = ca * ca, a1 = sa * sa, b0 = cb * cb, b1 = sb * sb;
  return {a0 * b0, a0 * b1, a1 * b0, a1 * b1};
}

namespace {

void add_copy_and_encoder(Circuit& circuit, EncoderWiring wiring) {
  circuit.add(Gate::cnot(reg::kA, reg::kC)).add(Gate::cnot(reg::kB, reg::kD));
  if (wiring == EncoderWiring::kHadamardOnC) {
    circuit.add(Gate::h(reg::kC)).add(Gate::cnot(reg::kC, reg::kD));
  } else {
    circuit.add(Gate::h(reg::kD)).add(Gate::cnot(reg::kD, reg::kC));
  }
}

// acos(sqrt(num / den)) with an empty row mapped to nullopt.
std::optional<double> half_angle(double num, double den) {
  if (den <= 0.0) return std::nullopt;
  return std::acos(std::sqrt(std::clamp(num / den, 0.0, 1.0)));
}

}  // namespace

Circuit build_bds_circuit(const AnglePair& angles, EncoderWiring wiring) {
  Circuit circuit(4);
  circuit.add(Gate::r(angles.theta / 2.0, reg::kA)).add(Gate::r(angles.alpha / 2.0, reg::kB));
  add_copy_and_encoder(circuit, wiring);
  return circuit;
}

ConditionalAngles conditional_angles(const BdsSpec& spec) {
  spec.validate();
  const double alpha_half = angles_from_spec(spec).alpha / 2.0;
  auto phi0 = half_angle(spec.p00, spec.p00 + spec.p01);
  auto phi1 = half_angle(spec.p10, spec.p10 + spec.p11);
  // A row with no weight leaves its rotation free; copy the other one.
  if (!phi0) phi0 = phi1.value_or(alpha_half);
  if (!phi1) phi1 = *phi0;
  return {angles_from_spec(spec).theta, *phi0, *phi1};
}

Circuit build_bds_circuit(const BdsSpec& spec, EncoderWiring wiring) {
  const ConditionalAngles ca = conditional_angles(spec);
  const double u = 0.5 * (ca.phi0 + ca.phi1);
  const double v = 0.5 * (ca.phi0 - ca.phi1);
  if (std::abs(v) < 1e-12) return build_bds_circuit(angles_from_spec(spec), wiring);

  Circuit circuit(4);
  circuit.add(Gate::r(ca.theta / 2.0, reg::kA))
      .add(Gate::r(u, reg::kB))
      .add(Gate::cnot(reg::kA, reg::kB))
      .add(Gate::r(v, reg::kB))
      .add(Gate::cnot(reg::kA, reg::kB));
  add_copy_and_encoder(circuit, wiring);
  return circuit;
}

StateVector basis_state(std::size_t n_qubits, std::size_t index) {
  const std::size_t dim = std::size_t{1} << n_qubits;
  if (index >= dim) throw Error(ErrorCode::kDimensionMismatch, "basis index outside register");
  StateVector v(dim);
  v[index] = 1.0;
  return v;
}

namespace {

void apply_single(StateVector& psi, std::size_t n_qubits, std::size_t qubit,
                  const ComplexMatrix& u) {
  const std::size_t mask = std::size_t{1} << (n_qubits - 1 - qubit);
  for (std::size_t idx = 0; idx < psi.size(); ++idx) {
    if (idx & mask) continue;
    const Complex a0 = psi[idx];
    const Complex a1 = psi[idx | mask];
    psi[idx] = u(0, 0) * a0 + u(0, 1) * a1;
    psi[idx | mask] = u(1, 0) * a0 + u(1, 1) * a1;
  }
}

void apply_cnot(StateVector& psi, std::size_t n_qubits, std::size_t control, std::size_t target) {
  const std::size_t cmask = std::size_t{1} << (n_qubits - 1 - control);
  const std::size_t tmask = std::size_t{1} << (n_qubits - 1 - target);
  for (std::size_t idx = 0; idx < psi.size(); ++idx) {
    if ((idx & cmask) && !(idx & tmask)) std::swap(psi[idx], psi[idx | tmask]);
  }
}

}  // namespace

StateVector simulate_statevector(const Circuit& circuit, const StateVector& input) {
  const std::size_t n = circuit.n_qubits();
  if (input.size() != (std::size_t{1} << n)) {
    throw Error(ErrorCode::kDimensionMismatch, "input size does not match the register");
  }
  double norm2 = 0.0;
  for (const auto& a : input) norm2 += std::norm(a);
  if (std::abs(norm2 - 1.0) > 1e-12) {
    std::ostringstream msg;
    msg << "input squared norm is " << norm2;
    throw Error(ErrorCode::kNotNormalized, msg.str());
  }

  StateVector psi = input;
  for (const Gate& g : circuit.gates()) {
    if (g.kind == GateKind::kCnot) {
      apply_cnot(psi, n, g.targets[0], g.targets[1]);
    } else {
      apply_single(psi, n, g.targets[0], g.matrix());
    }
  }
  return psi;
}

StateVector purification(const BdsSpec& spec, EncoderWiring wiring) {
  const Circuit circuit = build_bds_circuit(spec, wiring);
  return simulate_statevector(circuit, basis_state(4, 0));
}

DensityMatrix prepared_state(const BdsSpec& spec, EncoderWiring wiring) {
  const StateVector tau = purification(spec, wiring);
  const std::size_t dims[] = {2, 2, 2, 2};
  const std::size_t keep[] = {reg::kC, reg::kD};
  ComplexMatrix rho = partial_trace(ComplexMatrix::outer(tau), dims, keep);
  return DensityMatrix(rho.hermitian_part());
}

char basis_letter(PauliBasis basis) {
  switch (basis) {
    case PauliBasis::kX: return 'X';
    case PauliBasis::kY: return 'Y';
    case PauliBasis::kZ: return 'Z';
  }
  return '?';
}

std::map<std::size_t, std::size_t> default_layout(std::size_t n_qubits) {
  std::map<std::size_t, std::size_t> layout;
  if (n_qubits == 4) {
    layout = {{reg::kA, 1}, {reg::kB, 3}, {reg::kC, 2}, {reg::kD, 4}};
  } else {
    for (std::size_t q = 0; q < n_qubits; ++q) layout[q] = q;
  }
  return layout;
}

std::string format_angle(double radians) {
  constexpr double kPi = std::numbers::pi;
  if (std::abs(radians) < 1e-15) return "0";
  const double quarters = radians / (kPi / 4.0);
  const double nearest = std::round(quarters);
  if (std::abs(quarters - nearest) < 1e-12) {
    long q = static_cast<long>(nearest);
    const bool negative = q < 0;
    q = std::abs(q);
    long den = 4;
    while (den > 1 && q % 2 == 0) {
      q /= 2;
      den /= 2;
    }
    std::string out = negative ? "-" : "";
    if (q != 1) out += std::to_string(q) + "*";
    out += "pi";
    if (den != 1) out += "/" + std::to_string(den);
    return out;
  }
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), radians);
  return std::string(buf, res.ptr);
}

std::string to_qasm(const Circuit& circuit, const QasmOptions& options) {
  const std::size_t n = circuit.n_qubits();
  const auto layout = options.layout.empty() ? default_layout(n) : options.layout;

  std::set<std::size_t> used;
  std::size_t max_physical = 0;
  for (std::size_t q = 0; q < n; ++q) {
    const auto it = layout.find(q);
    if (it == layout.end()) {
      throw Error(ErrorCode::kInvalidLayout, "logical qubit " + std::to_string(q) + " unmapped");
    }
    if (!used.insert(it->second).second) {
      throw Error(ErrorCode::kInvalidLayout,
                  "physical qubit " + std::to_string(it->second) + " assigned twice");
    }
    max_physical = std::max(max_physical, it->second);
  }
  for (const auto& [q, basis] : options.measure) {
    if (q >= n) throw Error(ErrorCode::kInvalidLayout, "measured qubit outside the register");
  }
  auto phys = [&](std::size_t q) { return "q[" + std::to_string(layout.at(q)) + "]"; };

  std::ostringstream out;
  out << "OPENQASM 2.0;\n"
      << "include \"qelib1.inc\";\n"
      << "qreg q[" << (max_physical + 1) << "];\n";
  if (!options.measure.empty()) out << "creg c[" << n << "];\n";

  for (const Gate& g : circuit.gates()) {
    switch (g.kind) {
      case GateKind::kR:
        out << "u3(" << format_angle(2.0 * g.params[0]) << ",0,0) " << phys(g.targets[0]) << ";\n";
        break;
      case GateKind::kU3:
        out << "u3(" << format_angle(g.params[0]) << "," << format_angle(g.params[1]) << ","
            << format_angle(g.params[2]) << ") " << phys(g.targets[0]) << ";\n";
        break;
      case GateKind::kH:
        out << "h " << phys(g.targets[0]) << ";\n";
        break;
      case GateKind::kSDagger:
        out << "sdg " << phys(g.targets[0]) << ";\n";
        break;
      case GateKind::kCnot:
        out << "cx " << phys(g.targets[0]) << "," << phys(g.targets[1]) << ";\n";
        break;
    }
  }

  if (!options.measure.empty()) out << "barrier q;\n";
  for (const auto& [q, basis] : options.measure) {
    if (basis == PauliBasis::kX) {
      out << "h " << phys(q) << ";\n";
    } else if (basis == PauliBasis::kY) {
      out << "sdg " << phys(q) << ";\n"
          << "h " << phys(q) << ";\n";
    }
  }
  for (const auto& [q, basis] : options.measure) {
    out << "measure " << phys(q) << " -> c[" << q << "];\n";
  }
  return out.str();
}

}  // namespace bds
