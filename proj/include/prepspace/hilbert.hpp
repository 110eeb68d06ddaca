#pragma once

#include "prepspace/hermitian.hpp"
#include "prepspace/preparation.hpp"

namespace prepspace::hilbert {

/// Reference state-vector quantum mechanics. Everything in the canonical
/// formulation is checked against this namespace, so it shares no numerical
/// path with it: amplitudes, matrix products and eigendecomposition only.

/// Unit-norm vector of complex amplitudes psi_i = sqrt(p_i) exp(i phi_i).
class AmplitudeVector {
 public:
  /// Throws NotNormalized when |norm^2 - 1| > 1e-9; otherwise renormalizes.
  explicit AmplitudeVector(ComplexVector amplitudes);

  Eigen::Index dim() const noexcept { return amplitudes_.size(); }
  const ComplexVector& amplitudes() const noexcept { return amplitudes_; }
  std::complex<double> operator[](Eigen::Index i) const { return amplitudes_(i); }

 private:
  ComplexVector amplitudes_;
};

AmplitudeVector to_amplitudes(const Preparation& prep);
Preparation to_preparation(const AmplitudeVector& v);

/// psi'_i = sum_j conj(u_ji) psi_j, i.e. psi' = u^dagger psi with
/// u_ij = <i|j'>. Throws NotUnitary, DimensionMismatch.
AmplitudeVector apply_unitary(const ComplexMatrix& u, const AmplitudeVector& v);

/// exp(-i H t) from the Hermitian eigendecomposition of H.
ComplexMatrix propagator(const HermitianOperator& h, double t);

/// exp(-i H t) psi0.
AmplitudeVector propagate(const HermitianOperator& h, const AmplitudeVector& v0, double t);

/// <psi|F|psi>.
double expectation(const HermitianOperator& f, const AmplitudeVector& v);

/// (1/i) <psi|[F, H]|psi>, the rate of change of <F> under H.
double commutator_rate(const HermitianOperator& f, const HermitianOperator& h,
                       const AmplitudeVector& v);

}  // namespace prepspace::hilbert
