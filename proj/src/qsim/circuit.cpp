#include "vqa/qsim/circuit.hpp"

#include <set>
#include <string>

namespace vqa::qsim {

void Circuit::validate() const {
  if (num_qubits < 1 || num_qubits > kMaxStateQubits) {
    throw MalformedCircuit("num_qubits must be in [1, " + std::to_string(kMaxStateQubits) +
                           "], got " + std::to_string(num_qubits));
  }
  for (std::size_t i = 0; i < gates.size(); ++i) {
    try {
      validate_gate(gates[i], num_qubits);
    } catch (const MalformedCircuit& e) {
      throw MalformedCircuit("gate " + std::to_string(i) + ": " + e.what());
    }
  }
  std::set<int> seen;
  for (int q : measured) {
    if (q < 0 || q >= num_qubits) throw MalformedCircuit("measured qubit out of range");
    if (!seen.insert(q).second) throw MalformedCircuit("measured qubit listed twice");
  }
}

Circuit inverse(const Circuit& c) {
  Circuit out(c.num_qubits);
  out.measured = c.measured;
  out.gates.reserve(c.gates.size());
  for (auto it = c.gates.rbegin(); it != c.gates.rend(); ++it) out.gates.push_back(inverse(*it));
  return out;
}

}  // namespace vqa::qsim
