#include "vqa/qsim/density_matrix.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <string>

namespace vqa::qsim {

namespace {

bool is_power_of_two(Eigen::Index n) { return n > 0 && (n & (n - 1)) == 0; }

void check_dim(Eigen::Index dim) {
  if (!is_power_of_two(dim)) throw std::invalid_argument("density matrix dimension must be a power of two");
  if (dim > (Eigen::Index{1} << kMaxDensityQubits)) {
    throw CapacityExceeded("density matrix dimension " + std::to_string(dim) + " exceeds 2^" +
                           std::to_string(kMaxDensityQubits));
  }
}

}  // namespace

DensityMatrix::DensityMatrix(Eigen::MatrixXcd m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) throw std::invalid_argument("density matrix must be square");
  check_dim(m_.rows());
  if ((m_ - m_.adjoint()).cwiseAbs().maxCoeff() > 1e-9) {
    throw std::invalid_argument("density matrix is not Hermitian");
  }
  if (std::abs(m_.trace() - Complex{1.0, 0.0}) > 1e-9) {
    throw std::invalid_argument("density matrix trace is not 1");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-8) {
    throw std::invalid_argument("density matrix is not positive semidefinite");
  }
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
  Eigen::Map<const Eigen::VectorXcd> v(psi.amplitudes().data(), static_cast<Eigen::Index>(psi.size()));
  return DensityMatrix(v * v.adjoint());
}

DensityMatrix diagonal_density(const Distribution& dist) {
  dist.validate();
  const auto dim = static_cast<Eigen::Index>(dist.size());
  check_dim(dim);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) m(i, i) = dist.probs[static_cast<std::size_t>(i)];
  return DensityMatrix(std::move(m), DensityMatrix::Unchecked{});
}

DensityMatrix reduced_density(const StateVector& psi, int keep_qubits) {
  if (keep_qubits < 1 || keep_qubits > psi.num_qubits()) {
    throw std::invalid_argument("keep_qubits out of range");
  }
  const Eigen::Index dim_a = Eigen::Index{1} << keep_qubits;
  check_dim(dim_a);
  const Eigen::Index dim_b = static_cast<Eigen::Index>(psi.size()) / dim_a;
  // Index = a + dim_a * b, so amplitudes reshape column-major into dim_a x dim_b.
  Eigen::Map<const Eigen::MatrixXcd> psi_ab(psi.amplitudes().data(), dim_a, dim_b);
  Eigen::MatrixXcd rho = psi_ab * psi_ab.adjoint();
  return DensityMatrix(std::move(rho), DensityMatrix::Unchecked{});
}

double trace_distance(const DensityMatrix& rho0, const DensityMatrix& rho1) {
  if (rho0.dim() != rho1.dim()) {
    throw DimensionMismatch("density matrices of dimension " + std::to_string(rho0.dim()) + " and " +
                            std::to_string(rho1.dim()));
  }
  const Eigen::MatrixXcd diff = rho0.matrix() - rho1.matrix();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(diff, Eigen::EigenvaluesOnly);
  const double d = 0.5 * es.eigenvalues().cwiseAbs().sum();
  return std::min(1.0, d);
}

}  // namespace vqa::qsim
