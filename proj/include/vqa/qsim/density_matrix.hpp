#pragma once

#include <Eigen/Dense>

#include "vqa/qsim/distribution.hpp"
#include "vqa/qsim/state_vector.hpp"

namespace vqa::qsim {

/// dim x dim density operator, dim = 2^k with k <= kMaxDensityQubits.
class DensityMatrix {
 public:
  /// Validates: square power-of-two dimension, Hermitian and unit trace
  /// within 1e-9, minimum eigenvalue >= -1e-8. Throws std::invalid_argument.
  explicit DensityMatrix(Eigen::MatrixXcd m);

  static DensityMatrix pure(const StateVector& psi);

  Eigen::Index dim() const noexcept { return m_.rows(); }
  const Eigen::MatrixXcd& matrix() const noexcept { return m_; }

 private:
  struct Unchecked {};
  DensityMatrix(Eigen::MatrixXcd m, Unchecked) : m_(std::move(m)) {}
  friend DensityMatrix diagonal_density(const Distribution& dist);
  friend DensityMatrix reduced_density(const StateVector& psi, int keep_qubits);

  Eigen::MatrixXcd m_;
};

/// sum_x p_x |x><x|.
DensityMatrix diagonal_density(const Distribution& dist);

/// Tr over qubits [keep_qubits, n) of |psi><psi|.
DensityMatrix reduced_density(const StateVector& psi, int keep_qubits);

/// 1/2 sum |eigenvalues(rho0 - rho1)|. Throws DimensionMismatch.
double trace_distance(const DensityMatrix& rho0, const DensityMatrix& rho1);

}  // namespace vqa::qsim
