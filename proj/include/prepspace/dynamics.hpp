#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "prepspace/hermitian.hpp"
#include "prepspace/preparation.hpp"

namespace prepspace {

/// Below this probability the (p, phi) chart is abandoned for a step.
inline constexpr double kDynamicsFloor = 1e-8;

enum class Integrator {
  /// Implicit midpoint rule, second order, symplectic.
  ImplicitMidpoint,
  /// Symmetric triple-jump composition of implicit-midpoint substeps,
  /// fourth order, symplectic. Default.
  ImplicitMidpoint4,
  /// Classical RK4 with p renormalized after every step. Cross-check only.
  Rk4Renormalized,
};

std::string_view to_string(Integrator method) noexcept;
/// Throws InvalidArgument for unknown names.
Integrator parse_integrator(std::string_view name);

/// Emitted whenever a step runs in the Cartesian chart because some p_i fell
/// below the chart threshold.
struct ChartSwitch {
  std::size_t step = 0;
  double time = 0.0;
  double min_probability = 0.0;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<Preparation> states;
  std::vector<double> energy;  // mean energy at each recorded time
  std::vector<double> norm;    // raw sum of p before the stored state is rescaled
  std::vector<ChartSwitch> chart_switches;
  double dt = 0.0;
  Integrator method = Integrator::ImplicitMidpoint4;
};

struct EvolveOptions {
  Integrator method = Integrator::ImplicitMidpoint4;
  /// Store every k-th step (the final state is always stored).
  std::size_t record_every = 1;
};

/// sum_ij F_ij sqrt(p_i p_j) exp(-i (phi_i - phi_j)). Accepts unnormalized
/// points. Throws DimensionMismatch, NotHermitian (imaginary residue).
double mean_value(const PhasePoint& s, const HermitianOperator& f);
double mean_value(const Preparation& s, const HermitianOperator& f);

/// Gradient of mean_value: d/dp_i and d/dphi_i.
struct MeanValueGradient {
  std::vector<double> d_dp;
  std::vector<double> d_dphi;
};
MeanValueGradient mean_value_gradient(const PhasePoint& s, const HermitianOperator& f);

/// (dp/dt, dphi/dt) = (dH/dphi, -dH/dp). Throws BoundaryState when some
/// p_i < kDynamicsFloor.
TangentDisplacement hamilton_rhs(const Preparation& s, const HermitianOperator& h);
TangentDisplacement hamilton_rhs(const PhasePoint& s, const HermitianOperator& h);

/// Integrates the canonical equations from s0 to t_final with steps no longer
/// than dt. Throws InvalidArgument (dt <= 0, t_final < 0), DimensionMismatch,
/// StepRejected.
Trajectory evolve(const Preparation& s0, const HermitianOperator& h, double t_final, double dt,
                  const EvolveOptions& options = {});

/// Same integrator on raw coordinates; returns only the end point.
PhasePoint flow(const PhasePoint& s0, const HermitianOperator& h, double t, double dt,
                Integrator method = Integrator::ImplicitMidpoint4);

/// {f, g} = sum_i (df/dp_i dg/dphi_i - df/dphi_i dg/dp_i) for f = <F>, g = <G>.
double poisson_bracket(const HermitianOperator& f, const HermitianOperator& g,
                       const Preparation& s);

/// |det J - 1| for the central-difference Jacobian J of the time-t flow map
/// around s (probe h on each of the 2n coordinates). Throws BoundaryCrossing
/// when a probed trajectory gets below kDynamicsFloor.
double flow_volume_residual(const HermitianOperator& h, const Preparation& s, double t,
                            double probe);

/// max_k |energy_k - energy_0|.
double conserved_energy_drift(const Trajectory& traj);

}  // namespace prepspace
