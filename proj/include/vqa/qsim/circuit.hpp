#pragma once

#include <vector>

#include "vqa/qsim/gate.hpp"

namespace vqa::qsim {

/// Gate program on `num_qubits` qubits starting from |0^n>. `measured`
/// lists the qubits read out, in outcome-bit order; empty means all qubits
/// in index order.
struct Circuit {
  int num_qubits = 0;
  std::vector<Gate> gates;
  std::vector<int> measured;

  Circuit() = default;
  explicit Circuit(int n) : num_qubits(n) {}

  Circuit& add(Gate g) {
    gates.push_back(std::move(g));
    return *this;
  }

  int num_measured() const noexcept {
    return measured.empty() ? num_qubits : static_cast<int>(measured.size());
  }

  /// Throws MalformedCircuit.
  void validate() const;
};

/// Reverse order, each gate adjointed. Measurement spec is kept.
Circuit inverse(const Circuit& c);

}  // namespace vqa::qsim
