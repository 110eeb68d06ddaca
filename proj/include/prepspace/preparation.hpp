#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace prepspace {

/// Below this probability a phase is undefined and conventionally 0.
inline constexpr double kProbabilityFloor = 1e-12;
/// Inputs whose probabilities sum to 1 within this are rescaled, not rejected.
inline constexpr double kNormalizationTolerance = 1e-9;

/// Canonical coordinates (p_i, phi_i) with no normalization requirement.
/// Integrators and finite-difference probes work on these.
struct PhasePoint {
  std::vector<double> p;
  std::vector<double> phi;

  std::size_t dim() const noexcept { return p.size(); }
};

/// x_i = sqrt(p_i) cos(phi_i), y_i = sqrt(p_i) sin(phi_i).
struct CartesianChart {
  std::vector<double> x;
  std::vector<double> y;
};

/// Infinitesimal displacement (dp_i, dphi_i). Normalization is preserved when
/// the dp_i sum to zero; consumers check that, the type does not.
struct TangentDisplacement {
  std::vector<double> dp;
  std::vector<double> dphi;
};

/// A preparation described relative to one measurement context: outcome
/// probabilities p_i and phases phi_i. Phases are stored unwrapped and are
/// only meaningful up to a common constant.
class Preparation {
 public:
  /// Throws DimensionMismatch, NegativeProbability or NotNormalized.
  /// A probability sum within kNormalizationTolerance of 1 is rescaled.
  Preparation(std::vector<double> p, std::vector<double> phi);

  std::size_t dim() const noexcept { return p_.size(); }
  const std::vector<double>& p() const noexcept { return p_; }
  const std::vector<double>& phi() const noexcept { return phi_; }

  PhasePoint point() const { return {p_, phi_}; }

 private:
  struct Trusted {};
  Preparation(Trusted, std::vector<double> p, std::vector<double> phi)
      : p_(std::move(p)), phi_(std::move(phi)) {}

  friend Preparation gauge_fix(const Preparation& prep);
  friend Preparation shift_all_phases(const Preparation& prep, double shift);

  std::vector<double> p_;
  std::vector<double> phi_;
};

/// Wraps an angle into (-pi, pi]. Values already inside are returned unchanged.
double wrap_phase(double angle) noexcept;

CartesianChart to_cartesian(const Preparation& prep);

/// Inverse chart map. Phases of components with p_i < kProbabilityFloor are 0.
/// Throws NotNormalized when sum(x^2 + y^2) is off by more than 1e-9.
Preparation from_cartesian(const CartesianChart& chart);

/// Removes the common phase: the reference is the highest index with
/// p_i >= kProbabilityFloor, all phases end up in (-pi, pi], and phases of
/// negligible components are reset to 0. Idempotent.
Preparation gauge_fix(const Preparation& prep);

Preparation shift_all_phases(const Preparation& prep, double shift);

/// Gauge-invariant comparison: max over i of |dp_i| and the wrapped |dphi_i|
/// after gauge fixing both arguments.
double prep_distance_check(const Preparation& a, const Preparation& b);

/// Builds a Preparation from raw canonical coordinates (rescaling p).
Preparation to_preparation(const PhasePoint& point);

}  // namespace prepspace
