#pragma once

#include <span>

#include "prepspace/frame.hpp"
#include "prepspace/preparation.hpp"

namespace prepspace {

struct LineElementBreakdown {
  double classical_part = 0.0;  // sum dp_i^2 / (4 p_i)
  double variance_part = 0.0;   // variance of dphi under p
  double total = 0.0;
};

/// sum_i dp_i^2 / (4 p_i). Requires sum dp = 0 (1e-9) and p_i >= the
/// probability floor wherever dp_i != 0 (BoundaryState).
double statistical_distance2(std::span<const double> p, std::span<const double> dp);

/// sum_i p_i dphi_i^2 - (sum_i p_i dphi_i)^2, evaluated in centered form.
double phase_variance2(std::span<const double> p, std::span<const double> dphi);

LineElementBreakdown line_element2(const Preparation& s, const TangentDisplacement& d);

/// (dx, dy) image of a polar displacement under the Cartesian chart.
CartesianChart push_forward(const Preparation& s, const TangentDisplacement& d);

/// sum (dx^2 + dy^2) - [sum (x dy - y dx)]^2.
double cartesian_line_element2(const CartesianChart& at, const CartesianChart& displacement);

/// Angle between the rays of s1 and s2, in [0, pi/2].
double fubini_study_angle(const Preparation& s1, const Preparation& s2);

/// Moves s along d by step (p + step*dp, phi + step*dphi).
Preparation displace(const Preparation& s, const TangentDisplacement& d, double step);

/// |ds'^2 - ds^2| / ds^2 where ds'^2 is measured in the frame f from the
/// transformed pair (s, s + h d), differenced centrally about the image of
/// s + h d / 2.
double invariance_residual(const FrameChange& f, const Preparation& s,
                           const TangentDisplacement& d, double h);

}  // namespace prepspace
