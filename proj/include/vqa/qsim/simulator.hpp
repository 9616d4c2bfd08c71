#pragma once

#include <cstdint>

#include "vqa/qsim/circuit.hpp"
#include "vqa/qsim/distribution.hpp"
#include "vqa/qsim/state_vector.hpp"

namespace vqa::qsim {

void apply_gate(StateVector& state, const Gate& gate);

/// C|0^n>. Throws MalformedCircuit.
StateVector run_circuit(const Circuit& circuit);

/// |amplitude|^2 of every basis state.
Distribution probabilities(const StateVector& state);

/// Marginal of `probs` (over all qubits of the state) on `measured`.
Distribution marginal(const Distribution& full, const std::vector<int>& measured);

/// Distribution of measuring the circuit's `measured` qubits of C|0^n>.
Distribution output_distribution(const Circuit& circuit);

/// Probability of outcome `x` (over the measured qubits); for fully measured
/// circuits this is |<x|C|0^n>|^2. Throws DimensionMismatch when
/// `num_bits` differs from the measured width.
double amplitude_probability(const Circuit& circuit, std::uint64_t x, int num_bits);

}  // namespace vqa::qsim
