#include "vqa/qsim/state_vector.hpp"

#include <string>

namespace vqa::qsim {

namespace {
void check_qubits(int n) {
  if (n < 1 || n > kMaxStateQubits) {
    throw CapacityExceeded("statevector supports 1.." + std::to_string(kMaxStateQubits) +
                           " qubits, requested " + std::to_string(n));
  }
}
}  // namespace

StateVector::StateVector(int num_qubits) : num_qubits_(num_qubits) {
  check_qubits(num_qubits);
  amps_.assign(std::size_t{1} << num_qubits, Complex{0.0, 0.0});
  amps_[0] = 1.0;
}

StateVector::StateVector(int num_qubits, std::vector<Complex> amplitudes)
    : num_qubits_(num_qubits), amps_(std::move(amplitudes)) {
  check_qubits(num_qubits);
  if (amps_.size() != (std::size_t{1} << num_qubits)) {
    throw DimensionMismatch("amplitude vector length must be 2^num_qubits");
  }
}

double StateVector::norm_squared() const noexcept {
  double s = 0.0;
  for (const Complex& a : amps_) s += std::norm(a);
  return s;
}

}  // namespace vqa::qsim
