#pragma once

#include <cstdint>

#include "prepspace/hermitian.hpp"
#include "prepspace/preparation.hpp"

namespace prepspace {

/// A change of measurement context, parameterized by conditional
/// probabilities w_ij and phases beta_ij. Equivalent to the unitary
/// u_ji = sqrt(w_ij) exp(i beta_ij). beta_ij is 0 wherever w_ij is 0.
struct FrameChange {
  RealMatrix w;
  RealMatrix beta;

  Eigen::Index dim() const noexcept { return w.rows(); }
};

/// Maximum violation of the frame constraints: unit row and column sums of w,
/// plus the cos/sin orthogonality sums in both index orders.
struct FrameResidual {
  double stochastic = 0.0;
  double orthogonality = 0.0;

  double max() const noexcept { return stochastic > orthogonality ? stochastic : orthogonality; }
  bool valid(double tolerance = kFrameTolerance) const noexcept { return max() <= tolerance; }

  static constexpr double kFrameTolerance = 1e-10;
};

/// The real-pair form x' = a x + b y, y' = -b x + a y.
struct RealPairTransform {
  RealMatrix a;
  RealMatrix b;
};

/// Jacobian M of (p, phi) -> (p', phi') and the symplectic unit J.
struct SymplecticMatrices {
  RealMatrix m;
  RealMatrix j;

  /// ||M J M^T - J||_max.
  double symplectic_residual() const;
};

/// w_ij = |u_ji|^2, beta_ij = arg u_ji. Throws NotUnitary.
FrameChange frame_from_unitary(const ComplexMatrix& u);

/// u_ji = sqrt(w_ij) exp(i beta_ij). No validation.
ComplexMatrix unitary_from_frame(const FrameChange& f);

/// Never throws; malformed input reports an infinite residual.
FrameResidual validate_frame(const FrameChange& f);

/// Coordinates of the same preparation relative to the new context.
/// Throws DimensionMismatch, InvalidFrame.
Preparation apply_frame(const FrameChange& f, const Preparation& s);

/// The transformation law on raw canonical coordinates (no normalization,
/// no validation). Phases come out of atan2 and lie in (-pi, pi].
PhasePoint transform_point(const FrameChange& f, const PhasePoint& s);

struct ProbabilitySplit {
  std::vector<double> transformed;   // p'_i
  std::vector<double> classical;     // sum_j w_ij p_j
  std::vector<double> interference;  // p'_i - classical_i
};

ProbabilitySplit probability_split(const FrameChange& f, const Preparation& s);

RealPairTransform to_real_pair(const FrameChange& f);

/// Maximum violation of the orthonormality conditions on (a, b), in both the
/// column and the row form.
double real_pair_validate(const RealPairTransform& t);

/// Closed-form Jacobian of the transformation at s. Requires every p_i and
/// every transformed p'_i to be at least 1e-6 (BoundaryState otherwise).
SymplecticMatrices frame_jacobian(const FrameChange& f, const Preparation& s);

/// Haar-random frame, deterministic per seed.
FrameChange random_frame(Eigen::Index n, std::uint64_t seed);

namespace detail {

/// Residual of the general linear conditions (x' = a x + b y, y' = c x + d y)
/// for norm preservation together with invariance of the phase-variance term.
/// Zero exactly when c = -b, d = a and (a, b) satisfy the real-pair conditions.
double general_linear_residual(const RealMatrix& a, const RealMatrix& b, const RealMatrix& c,
                               const RealMatrix& d);

}  // namespace detail

}  // namespace prepspace
