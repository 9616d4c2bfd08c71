#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace vqa::qsim {

using Complex = std::complex<double>;

inline constexpr int kMaxStateQubits = 24;
inline constexpr int kMaxDensityQubits = 12;
inline constexpr double kNormTolerance = 1e-9;

/// Gate targets out of range, non-unitary matrices, bad oracle tables.
class MalformedCircuit : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Operands of incompatible sizes (distributions, density matrices, bit strings).
class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A request exceeds the desk-scale memory caps.
class CapacityExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace vqa::qsim
