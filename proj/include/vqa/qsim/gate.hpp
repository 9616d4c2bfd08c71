#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "vqa/qsim/types.hpp"

namespace vqa::qsim {

enum class GateKind {
  kH, kX, kY, kZ, kS, kT,
  kPhase,       // diag(1, e^{i angle})
  kCnot,        // targets = {control, target}
  kCz,
  kSwap,
  kUnitary1,    // explicit 2x2, row-major
  kUnitary2,    // explicit 4x4, local index bit(t0) | bit(t1) << 1
  kOracle,      // |x>|y> -> |x>|y xor table[x]>; x = first `oracle_inputs` targets
  kPhaseTable,  // |x> -> e^{i phases[x]} |x> over the target register
};

std::string_view gate_kind_name(GateKind k) noexcept;
GateKind parse_gate_kind(std::string_view name);

/// Registers inside Oracle and PhaseTable gates are little-endian in target
/// order: targets[0] is bit 0 of x.
struct Gate {
  GateKind kind = GateKind::kH;
  std::vector<int> targets;
  double angle = 0.0;
  std::vector<Complex> matrix;
  std::vector<std::uint64_t> table;
  std::vector<double> phases;
  int oracle_inputs = 0;

  int arity() const noexcept { return static_cast<int>(targets.size()); }
};

namespace gates {
Gate h(int q);
Gate x(int q);
Gate y(int q);
Gate z(int q);
Gate s(int q);
Gate t(int q);
Gate phase(int q, double angle);
Gate cnot(int control, int target);
Gate cz(int a, int b);
Gate swap(int a, int b);
Gate unitary1(int q, std::vector<Complex> m);
Gate unitary2(int q0, int q1, std::vector<Complex> m);
Gate oracle(std::vector<int> inputs, std::vector<int> outputs, std::vector<std::uint64_t> table);
Gate phase_table(std::vector<int> targets, std::vector<double> phases);
}  // namespace gates

/// Checks targets against `num_qubits`, matrix unitarity (1e-9), and table
/// shapes. Throws MalformedCircuit.
void validate_gate(const Gate& g, int num_qubits);

/// The adjoint gate.
Gate inverse(const Gate& g);

}  // namespace vqa::qsim
