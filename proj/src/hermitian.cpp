#include "prepspace/hermitian.hpp"

#include <cmath>
#include <algorithm>
#include <limits>
#include <string>

#include "prepspace/errors.hpp"

namespace prepspace {

namespace {

constexpr double kHermitianTolerance = 1e-12;

}  // namespace

HermitianOperator::HermitianOperator(const ComplexMatrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw Error(ErrorCode::NotHermitian, "operator matrix must be square and non-empty");
  }
  const double asymmetry = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (!(asymmetry <= kHermitianTolerance)) {
    throw Error(ErrorCode::NotHermitian, "||H - H^dagger||_max = " + std::to_string(asymmetry));
  }
  matrix_ = 0.5 * (m + m.adjoint());
}

HermitianOperator HermitianOperator::diagonal(std::span<const double> energies) {
  ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(energies.size()),
                                        static_cast<Eigen::Index>(energies.size()));
  for (std::size_t i = 0; i < energies.size(); ++i) {
    m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = energies[i];
  }
  return HermitianOperator(m);
}

HermitianOperator HermitianOperator::zero(Eigen::Index n) {
  return HermitianOperator(ComplexMatrix::Zero(n, n));
}

HermitianOperator HermitianOperator::identity(Eigen::Index n) {
  return HermitianOperator(ComplexMatrix::Identity(n, n));
}

HermitianOperator HermitianOperator::pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return HermitianOperator(m);
}

HermitianOperator HermitianOperator::pauli_y() {
  using namespace std::complex_literals;
  ComplexMatrix m(2, 2);
  m << 0.0, -1.0i, 1.0i, 0.0;
  return HermitianOperator(m);
}

HermitianOperator HermitianOperator::pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return HermitianOperator(m);
}

bool HermitianOperator::is_diagonal() const { return off_diagonal_norm() == 0.0; }

double HermitianOperator::off_diagonal_norm() const {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < dim(); ++i) {
    double row = 0.0;
    for (Eigen::Index j = 0; j < dim(); ++j) {
      if (j != i) row += std::abs(matrix_(i, j));
    }
    worst = std::max(worst, row);
  }
  return worst;
}

HermitianOperator operator+(const HermitianOperator& a, const HermitianOperator& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::DimensionMismatch, "operator dimensions differ");
  return HermitianOperator(a.matrix() + b.matrix());
}

HermitianOperator operator*(double s, const HermitianOperator& a) {
  return HermitianOperator(s * a.matrix());
}

double unitarity_residual(const ComplexMatrix& u) {
  if (u.rows() != u.cols() || u.rows() == 0) return std::numeric_limits<double>::infinity();
  const ComplexMatrix gram = u.adjoint() * u;
  return (gram - ComplexMatrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
}

}  // namespace prepspace
