#include "vqa/qsim/simulator.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "vqa/qsim/kernels.hpp"

namespace vqa::qsim {

namespace {

using kernels::Mat2;
using kernels::Mat4;

constexpr double kInvSqrt2 = 0.70710678118654752440;

Mat2 named_matrix(const Gate& g) {
  const Complex i{0.0, 1.0};
  switch (g.kind) {
    case GateKind::kH: return {kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2};
    case GateKind::kX: return {0.0, 1.0, 1.0, 0.0};
    case GateKind::kY: return {0.0, -i, i, 0.0};
    case GateKind::kZ: return {1.0, 0.0, 0.0, -1.0};
    case GateKind::kS: return {1.0, 0.0, 0.0, i};
    case GateKind::kT: return {1.0, 0.0, 0.0, std::polar(1.0, std::numbers::pi / 4)};
    case GateKind::kPhase: return {1.0, 0.0, 0.0, std::polar(1.0, g.angle)};
    case GateKind::kUnitary1: return {g.matrix[0], g.matrix[1], g.matrix[2], g.matrix[3]};
    default: throw MalformedCircuit("not a single-qubit matrix gate");
  }
}

std::uint64_t gather(std::uint64_t index, const int* qubits, int count) {
  std::uint64_t v = 0;
  for (int j = 0; j < count; ++j) v |= ((index >> qubits[j]) & 1U) << j;
  return v;
}

void apply_oracle(StateVector& state, const Gate& g) {
  const int inputs = g.oracle_inputs;
  const int outputs = g.arity() - inputs;
  const int* in_q = g.targets.data();
  const int* out_q = g.targets.data() + inputs;
  std::uint64_t out_mask = 0;
  for (int j = 0; j < outputs; ++j) out_mask |= std::uint64_t{1} << out_q[j];

  auto amps = state.amplitudes();
  std::vector<Complex> next(amps.size());
  for (std::uint64_t i = 0; i < amps.size(); ++i) {
    const std::uint64_t x = gather(i, in_q, inputs);
    const std::uint64_t y = gather(i, out_q, outputs) ^ g.table[x];
    std::uint64_t j = i & ~out_mask;
    for (int k = 0; k < outputs; ++k) j |= ((y >> k) & 1U) << out_q[k];
    next[j] = amps[i];
  }
  std::copy(next.begin(), next.end(), amps.begin());
}

void apply_phase_table(StateVector& state, const Gate& g) {
  std::vector<Complex> factors(g.phases.size());
  for (std::size_t k = 0; k < g.phases.size(); ++k) factors[k] = std::polar(1.0, g.phases[k]);
  auto amps = state.amplitudes();
  for (std::uint64_t i = 0; i < amps.size(); ++i) {
    amps[i] *= factors[gather(i, g.targets.data(), g.arity())];
  }
}

}  // namespace

void apply_gate(StateVector& state, const Gate& g) {
  auto amps = state.amplitudes();
  const auto& k = kernels::active();
  switch (g.kind) {
    case GateKind::kCnot: {
      const std::uint64_t c = std::uint64_t{1} << g.targets[0];
      const std::uint64_t t = std::uint64_t{1} << g.targets[1];
      for (std::uint64_t i = 0; i < amps.size(); ++i)
        if ((i & c) && !(i & t)) std::swap(amps[i], amps[i | t]);
      break;
    }
    case GateKind::kCz: {
      const std::uint64_t both = (std::uint64_t{1} << g.targets[0]) | (std::uint64_t{1} << g.targets[1]);
      for (std::uint64_t i = 0; i < amps.size(); ++i)
        if ((i & both) == both) amps[i] = -amps[i];
      break;
    }
    case GateKind::kSwap: {
      const std::uint64_t a = std::uint64_t{1} << g.targets[0];
      const std::uint64_t b = std::uint64_t{1} << g.targets[1];
      for (std::uint64_t i = 0; i < amps.size(); ++i)
        if ((i & a) && !(i & b)) std::swap(amps[i], amps[(i & ~a) | b]);
      break;
    }
    case GateKind::kUnitary2: {
      Mat4 m;
      std::copy(g.matrix.begin(), g.matrix.end(), m.begin());
      k.apply_2q(amps, static_cast<unsigned>(g.targets[0]), static_cast<unsigned>(g.targets[1]), m);
      break;
    }
    case GateKind::kOracle:
      apply_oracle(state, g);
      break;
    case GateKind::kPhaseTable:
      apply_phase_table(state, g);
      break;
    default:
      k.apply_1q(amps, static_cast<unsigned>(g.targets[0]), named_matrix(g));
      break;
  }
}

StateVector run_circuit(const Circuit& circuit) {
  circuit.validate();
  StateVector state(circuit.num_qubits);
  for (const Gate& g : circuit.gates) apply_gate(state, g);
  return state;
}

Distribution probabilities(const StateVector& state) {
  std::vector<double> p(state.size());
  kernels::active().norm_squared(state.amplitudes(), p);
  return Distribution(state.num_qubits(), std::move(p));
}

Distribution marginal(const Distribution& full, const std::vector<int>& measured) {
  if (measured.empty()) return full;
  const int k = static_cast<int>(measured.size());
  std::vector<double> p(std::size_t{1} << k, 0.0);
  for (std::uint64_t i = 0; i < full.size(); ++i) {
    if (full.probs[i] != 0.0) p[gather(i, measured.data(), k)] += full.probs[i];
  }
  return Distribution(k, std::move(p));
}

Distribution output_distribution(const Circuit& circuit) {
  const Distribution full = probabilities(run_circuit(circuit));
  if (circuit.measured.empty()) return full;
  return marginal(full, circuit.measured);
}

double amplitude_probability(const Circuit& circuit, std::uint64_t x, int num_bits) {
  if (num_bits != circuit.num_measured()) {
    throw DimensionMismatch("bit string has " + std::to_string(num_bits) +
                            " bits, circuit measures " + std::to_string(circuit.num_measured()));
  }
  if (circuit.measured.empty()) {
    const StateVector psi = run_circuit(circuit);
    return std::norm(psi[x]);
  }
  return output_distribution(circuit).probs[x];
}

}  // namespace vqa::qsim
