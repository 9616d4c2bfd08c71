#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "vqa/qsim/types.hpp"

namespace vqa::qsim {

/// Amplitudes over n qubits; basis index bit i is qubit i.
class StateVector {
 public:
  /// |0^n>. Throws CapacityExceeded beyond kMaxStateQubits.
  explicit StateVector(int num_qubits);
  StateVector(int num_qubits, std::vector<Complex> amplitudes);

  int num_qubits() const noexcept { return num_qubits_; }
  std::size_t size() const noexcept { return amps_.size(); }

  std::span<Complex> amplitudes() noexcept { return amps_; }
  std::span<const Complex> amplitudes() const noexcept { return amps_; }
  Complex operator[](std::size_t i) const noexcept { return amps_[i]; }

  double norm_squared() const noexcept;

 private:
  int num_qubits_;
  std::vector<Complex> amps_;
};

}  // namespace vqa::qsim
