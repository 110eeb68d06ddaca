#include "prepspace/hilbert.hpp"

#include <cmath>
#include <string>

#include "prepspace/errors.hpp"

namespace prepspace::hilbert {

namespace {

constexpr double kUnitaryTolerance = 1e-10;

void require_unitary(const ComplexMatrix& u) {
  const double residual = unitarity_residual(u);
  if (!(residual <= kUnitaryTolerance)) {
    throw Error(ErrorCode::NotUnitary, "||u^dagger u - 1||_max = " + std::to_string(residual));
  }
}

void require_dim(Eigen::Index a, Eigen::Index b) {
  if (a != b) {
    throw Error(ErrorCode::DimensionMismatch,
                "dimensions " + std::to_string(a) + " and " + std::to_string(b) + " differ");
  }
}

// Imaginary-part tolerance for expectation values, relative to the operator scale.
double imaginary_tolerance(const ComplexMatrix& m) { return 1e-12 * std::max(1.0, m.norm()); }

}  // namespace

AmplitudeVector::AmplitudeVector(ComplexVector amplitudes) : amplitudes_(std::move(amplitudes)) {
  const double norm2 = amplitudes_.squaredNorm();
  if (!(std::abs(norm2 - 1.0) <= kNormalizationTolerance)) {
    throw Error(ErrorCode::NotNormalized, "|psi|^2 = " + std::to_string(norm2));
  }
  if (norm2 != 1.0) amplitudes_ /= std::sqrt(norm2);
}

AmplitudeVector to_amplitudes(const Preparation& prep) {
  ComplexVector psi(static_cast<Eigen::Index>(prep.dim()));
  for (std::size_t i = 0; i < prep.dim(); ++i) {
    psi(static_cast<Eigen::Index>(i)) = std::polar(std::sqrt(prep.p()[i]), prep.phi()[i]);
  }
  return AmplitudeVector(std::move(psi));
}

Preparation to_preparation(const AmplitudeVector& v) {
  std::vector<double> p(static_cast<std::size_t>(v.dim()));
  std::vector<double> phi(p.size());
  for (Eigen::Index i = 0; i < v.dim(); ++i) {
    const auto k = static_cast<std::size_t>(i);
    p[k] = std::norm(v[i]);
    phi[k] = p[k] < kProbabilityFloor ? 0.0 : std::arg(v[i]);
  }
  return Preparation(std::move(p), std::move(phi));
}

AmplitudeVector apply_unitary(const ComplexMatrix& u, const AmplitudeVector& v) {
  require_dim(u.rows(), v.dim());
  require_unitary(u);
  return AmplitudeVector(u.adjoint() * v.amplitudes());
}

ComplexMatrix propagator(const HermitianOperator& h, double t) {
  const Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(h.matrix());
  const Eigen::VectorXd& energies = eig.eigenvalues();
  ComplexVector phases(energies.size());
  for (Eigen::Index k = 0; k < energies.size(); ++k) phases(k) = std::polar(1.0, -energies(k) * t);
  return eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
}

AmplitudeVector propagate(const HermitianOperator& h, const AmplitudeVector& v0, double t) {
  require_dim(h.dim(), v0.dim());
  return AmplitudeVector(propagator(h, t) * v0.amplitudes());
}

double expectation(const HermitianOperator& f, const AmplitudeVector& v) {
  require_dim(f.dim(), v.dim());
  const std::complex<double> value = v.amplitudes().dot(f.matrix() * v.amplitudes());
  if (!(std::abs(value.imag()) <= imaginary_tolerance(f.matrix()))) {
    throw Error(ErrorCode::NotHermitian, "expectation has imaginary part " + std::to_string(value.imag()));
  }
  return value.real();
}

double commutator_rate(const HermitianOperator& f, const HermitianOperator& h,
                       const AmplitudeVector& v) {
  require_dim(f.dim(), h.dim());
  require_dim(f.dim(), v.dim());
  const ComplexMatrix commutator = f.matrix() * h.matrix() - h.matrix() * f.matrix();
  const std::complex<double> value = v.amplitudes().dot(commutator * v.amplitudes());
  // (1/i) z = -i z; for an anti-Hermitian commutator z is purely imaginary.
  if (!(std::abs(value.real()) <= imaginary_tolerance(commutator))) {
    throw Error(ErrorCode::NotHermitian, "commutator expectation has real part " + std::to_string(value.real()));
  }
  return value.imag();
}

}  // namespace prepspace::hilbert
