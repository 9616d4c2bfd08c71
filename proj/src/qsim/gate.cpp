#include "vqa/qsim/gate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <set>
#include <string>

namespace vqa::qsim {

namespace {

struct KindName {
  GateKind kind;
  std::string_view name;
};

constexpr std::array<KindName, 14> kKindNames{{
    {GateKind::kH, "H"},
    {GateKind::kX, "X"},
    {GateKind::kY, "Y"},
    {GateKind::kZ, "Z"},
    {GateKind::kS, "S"},
    {GateKind::kT, "T"},
    {GateKind::kPhase, "Phase"},
    {GateKind::kCnot, "CNOT"},
    {GateKind::kCz, "CZ"},
    {GateKind::kSwap, "SWAP"},
    {GateKind::kUnitary1, "Unitary1"},
    {GateKind::kUnitary2, "Unitary2"},
    {GateKind::kOracle, "Oracle"},
    {GateKind::kPhaseTable, "PhaseTable"},
}};

int expected_arity(GateKind k) {
  switch (k) {
    case GateKind::kCnot:
    case GateKind::kCz:
    case GateKind::kSwap:
    case GateKind::kUnitary2:
      return 2;
    case GateKind::kOracle:
    case GateKind::kPhaseTable:
      return -1;
    default:
      return 1;
  }
}

void check_unitary(const std::vector<Complex>& m, std::size_t dim) {
  if (m.size() != dim * dim) {
    throw MalformedCircuit("explicit matrix must have " + std::to_string(dim * dim) +
                           " entries, got " + std::to_string(m.size()));
  }
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      Complex acc{0.0, 0.0};
      for (std::size_t k = 0; k < dim; ++k) acc += std::conj(m[k * dim + i]) * m[k * dim + j];
      const Complex expect = i == j ? Complex{1.0, 0.0} : Complex{0.0, 0.0};
      if (std::abs(acc - expect) > 1e-9) throw MalformedCircuit("explicit matrix is not unitary");
    }
  }
}

std::vector<Complex> adjoint(const std::vector<Complex>& m, std::size_t dim) {
  std::vector<Complex> out(dim * dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) out[j * dim + i] = std::conj(m[i * dim + j]);
  return out;
}

}  // namespace

std::string_view gate_kind_name(GateKind k) noexcept {
  for (const auto& kn : kKindNames)
    if (kn.kind == k) return kn.name;
  return "?";
}

GateKind parse_gate_kind(std::string_view name) {
  for (const auto& kn : kKindNames)
    if (kn.name == name) return kn.kind;
  throw MalformedCircuit("unknown gate kind '" + std::string(name) + "'");
}

namespace gates {

Gate h(int q) { return {.kind = GateKind::kH, .targets = {q}}; }
Gate x(int q) { return {.kind = GateKind::kX, .targets = {q}}; }
Gate y(int q) { return {.kind = GateKind::kY, .targets = {q}}; }
Gate z(int q) { return {.kind = GateKind::kZ, .targets = {q}}; }
Gate s(int q) { return {.kind = GateKind::kS, .targets = {q}}; }
Gate t(int q) { return {.kind = GateKind::kT, .targets = {q}}; }
Gate phase(int q, double angle) { return {.kind = GateKind::kPhase, .targets = {q}, .angle = angle}; }
Gate cnot(int control, int target) { return {.kind = GateKind::kCnot, .targets = {control, target}}; }
Gate cz(int a, int b) { return {.kind = GateKind::kCz, .targets = {a, b}}; }
Gate swap(int a, int b) { return {.kind = GateKind::kSwap, .targets = {a, b}}; }

Gate unitary1(int q, std::vector<Complex> m) {
  return {.kind = GateKind::kUnitary1, .targets = {q}, .matrix = std::move(m)};
}

Gate unitary2(int q0, int q1, std::vector<Complex> m) {
  return {.kind = GateKind::kUnitary2, .targets = {q0, q1}, .matrix = std::move(m)};
}

Gate oracle(std::vector<int> inputs, std::vector<int> outputs, std::vector<std::uint64_t> table) {
  Gate g{.kind = GateKind::kOracle, .targets = std::move(inputs), .table = std::move(table)};
  g.oracle_inputs = g.arity();
  g.targets.insert(g.targets.end(), outputs.begin(), outputs.end());
  return g;
}

Gate phase_table(std::vector<int> targets, std::vector<double> phases) {
  return {.kind = GateKind::kPhaseTable, .targets = std::move(targets), .phases = std::move(phases)};
}

}  // namespace gates

void validate_gate(const Gate& g, int num_qubits) {
  const std::string name(gate_kind_name(g.kind));
  const int arity = expected_arity(g.kind);
  if (arity > 0 && g.arity() != arity) {
    throw MalformedCircuit(name + " expects " + std::to_string(arity) + " target(s), got " +
                           std::to_string(g.arity()));
  }
  if (g.targets.empty()) throw MalformedCircuit(name + " has no targets");
  std::set<int> seen;
  for (int q : g.targets) {
    if (q < 0 || q >= num_qubits) {
      throw MalformedCircuit(name + " target " + std::to_string(q) + " out of range for " +
                             std::to_string(num_qubits) + " qubits");
    }
    if (!seen.insert(q).second) throw MalformedCircuit(name + " repeats target " + std::to_string(q));
  }
  switch (g.kind) {
    case GateKind::kPhase:
      if (!std::isfinite(g.angle)) throw MalformedCircuit("Phase angle is not finite");
      break;
    case GateKind::kUnitary1:
      check_unitary(g.matrix, 2);
      break;
    case GateKind::kUnitary2:
      check_unitary(g.matrix, 4);
      break;
    case GateKind::kOracle: {
      const int inputs = g.oracle_inputs;
      const int outputs = g.arity() - inputs;
      if (inputs < 1 || outputs < 1 || inputs > 30) {
        throw MalformedCircuit("Oracle needs at least one input and one output qubit");
      }
      if (g.table.size() != (std::size_t{1} << inputs)) {
        throw MalformedCircuit("Oracle table must have 2^inputs entries");
      }
      const std::uint64_t limit = std::uint64_t{1} << outputs;
      for (std::uint64_t v : g.table) {
        if (v >= limit) throw MalformedCircuit("Oracle table value exceeds output register");
      }
      break;
    }
    case GateKind::kPhaseTable:
      if (g.arity() > 30 || g.phases.size() != (std::size_t{1} << g.arity())) {
        throw MalformedCircuit("PhaseTable needs 2^targets phases");
      }
      for (double p : g.phases)
        if (!std::isfinite(p)) throw MalformedCircuit("PhaseTable phase is not finite");
      break;
    default:
      break;
  }
}

Gate inverse(const Gate& g) {
  Gate inv = g;
  switch (g.kind) {
    case GateKind::kS:
      inv = gates::phase(g.targets[0], -std::numbers::pi / 2);
      break;
    case GateKind::kT:
      inv = gates::phase(g.targets[0], -std::numbers::pi / 4);
      break;
    case GateKind::kPhase:
      inv.angle = -g.angle;
      break;
    case GateKind::kUnitary1:
      inv.matrix = adjoint(g.matrix, 2);
      break;
    case GateKind::kUnitary2:
      inv.matrix = adjoint(g.matrix, 4);
      break;
    case GateKind::kPhaseTable:
      for (double& p : inv.phases) p = -p;
      break;
    default:
      // H, X, Y, Z, CNOT, CZ, SWAP and XOR oracles are involutions.
      break;
  }
  return inv;
}

}  // namespace vqa::qsim
