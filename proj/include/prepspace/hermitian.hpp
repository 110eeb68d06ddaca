#pragma once

#include <complex>
#include <span>

#include <Eigen/Dense>

namespace prepspace {

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;

/// n x n complex matrix equal to its conjugate transpose. Hamiltonians are in
/// units of 1/time (hbar = 1); observables carry their own units.
class HermitianOperator {
 public:
  /// Throws NotHermitian when ||m - m^dagger||_max > 1e-12 or m is not square.
  /// The stored matrix is the exact Hermitian part (m + m^dagger) / 2.
  explicit HermitianOperator(const ComplexMatrix& m);

  static HermitianOperator diagonal(std::span<const double> energies);
  static HermitianOperator zero(Eigen::Index n);
  static HermitianOperator identity(Eigen::Index n);
  static HermitianOperator pauli_x();
  static HermitianOperator pauli_y();
  static HermitianOperator pauli_z();

  Eigen::Index dim() const noexcept { return matrix_.rows(); }
  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  std::complex<double> operator()(Eigen::Index i, Eigen::Index j) const { return matrix_(i, j); }

  bool is_diagonal() const;
  /// max_i sum_{j != i} |H_ij|; zero for operators diagonal in this basis.
  double off_diagonal_norm() const;

 private:
  ComplexMatrix matrix_;
};

HermitianOperator operator+(const HermitianOperator& a, const HermitianOperator& b);
HermitianOperator operator*(double s, const HermitianOperator& a);

/// ||u^dagger u - 1||_max, or +inf when u is not square.
double unitarity_residual(const ComplexMatrix& u);

}  // namespace prepspace
