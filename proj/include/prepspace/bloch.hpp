#pragma once

#include "prepspace/frame.hpp"
#include "prepspace/hermitian.hpp"
#include "prepspace/preparation.hpp"

namespace prepspace::bloch {

/// p_1 = cos^2(theta/2), p_2 = sin^2(theta/2), phi = phi_1 - phi_2.
struct SpherePoint {
  double theta = 0.0;  // [0, pi]
  double phi = 0.0;    // (-pi, pi], 0 at the poles
};

/// Throws DimensionMismatch unless n == 2.
SpherePoint to_sphere(const Preparation& s);
/// Gauge phi_2 = 0.
Preparation from_sphere(const SpherePoint& pt);

/// (1/4)(dtheta^2 + sin^2(theta) dphi^2): the sphere of radius 1/2.
double sphere_line_element2(const SpherePoint& pt, double dtheta, double dphi);

/// The (dp, dphi) displacement corresponding to (dtheta, dphi) at pt.
TangentDisplacement sphere_displacement(const SpherePoint& pt, double dtheta, double dphi);

/// theta' from the spherical cosine law with pole offset (alpha, beta).
double cosine_law_theta(const SpherePoint& pt, double alpha, double beta);

/// Frame with w_11 = w_22 = cos^2(alpha/2), w_12 = w_21 = sin^2(alpha/2) and
/// beta_11 - beta_12 = beta, completed by beta_12 = beta_21 = 0,
/// beta_22 = pi - beta.
FrameChange rotation_frame(double alpha, double beta);

/// The reduced conjugate pair (P, phi) with P = cos(theta) / 2.
struct ReducedRate {
  double dp_dt = 0.0;
  double dphi_dt = 0.0;
};

/// dP/dt = dH/dphi, dphi/dt = -dH/dP for the mean energy expressed in
/// (P, phi). Throws DimensionMismatch unless h is 2x2, BoundaryState at poles.
ReducedRate reduced_rhs(const SpherePoint& pt, const HermitianOperator& h);

/// Closed-form motion under diag(e1, e2): theta fixed, phi -> phi - (e1-e2) t.
SpherePoint evolve_two_level(const SpherePoint& pt0, double e1, double e2, double t);

}  // namespace prepspace::bloch
