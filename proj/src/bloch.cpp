#include "prepspace/bloch.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "prepspace/errors.hpp"

namespace prepspace::bloch {

namespace {

constexpr double kPi = std::numbers::pi;

bool at_pole(double p1, double p2) { return p1 < kProbabilityFloor || p2 < kProbabilityFloor; }

}  // namespace

SpherePoint to_sphere(const Preparation& s) {
  if (s.dim() != 2) throw Error(ErrorCode::DimensionMismatch, "sphere chart needs a two-level preparation");
  const double p1 = s.p()[0];
  const double p2 = s.p()[1];
  SpherePoint pt;
  pt.theta = 2.0 * std::acos(std::clamp(std::sqrt(p1), 0.0, 1.0));
  pt.phi = at_pole(p1, p2) ? 0.0 : wrap_phase(s.phi()[0] - s.phi()[1]);
  return pt;
}

Preparation from_sphere(const SpherePoint& pt) {
  const double c = std::cos(0.5 * pt.theta);
  const double sn = std::sin(0.5 * pt.theta);
  return Preparation({c * c, sn * sn}, {pt.phi, 0.0});
}

double sphere_line_element2(const SpherePoint& pt, double dtheta, double dphi) {
  const double sn = std::sin(pt.theta);
  return 0.25 * (dtheta * dtheta + sn * sn * dphi * dphi);
}

TangentDisplacement sphere_displacement(const SpherePoint& pt, double dtheta, double dphi) {
  // dp_1 = d cos^2(theta/2) = -sin(theta)/2 dtheta.
  const double dp1 = -0.5 * std::sin(pt.theta) * dtheta;
  return {{dp1, -dp1}, {dphi, 0.0}};
}

double cosine_law_theta(const SpherePoint& pt, double alpha, double beta) {
  const double cos_theta = std::cos(alpha) * std::cos(pt.theta) +
                           std::sin(alpha) * std::sin(pt.theta) * std::cos(pt.phi - beta);
  return std::acos(std::clamp(cos_theta, -1.0, 1.0));
}

FrameChange rotation_frame(double alpha, double beta) {
  const double c2 = std::cos(0.5 * alpha) * std::cos(0.5 * alpha);
  const double s2 = std::sin(0.5 * alpha) * std::sin(0.5 * alpha);
  FrameChange f{RealMatrix(2, 2), RealMatrix(2, 2)};
  f.w << c2, s2, s2, c2;
  f.beta << beta, 0.0, 0.0, kPi - beta;
  return f;
}

ReducedRate reduced_rhs(const SpherePoint& pt, const HermitianOperator& h) {
  if (h.dim() != 2) throw Error(ErrorCode::DimensionMismatch, "reduced equations need a 2x2 operator");
  // With P = cos(theta)/2: p_1 = 1/2 + P, p_2 = 1/2 - P, and
  // H(P, phi) = H_11 p_1 + H_22 p_2 + 2 sqrt(p_1 p_2) Re(H_12 exp(-i phi)).
  const double momentum = 0.5 * std::cos(pt.theta);
  const double p1 = 0.5 + momentum;
  const double p2 = 0.5 - momentum;
  if (at_pole(p1, p2)) throw Error(ErrorCode::BoundaryState, "reduced chart is singular at the poles");
  const double root = std::sqrt(p1 * p2);
  const std::complex<double> coupling = h(0, 1) * std::polar(1.0, -pt.phi);
  ReducedRate rate;
  // d/dphi Re(H_12 e^{-i phi}) = Im(H_12 e^{-i phi}).
  rate.dp_dt = 2.0 * root * coupling.imag();
  // d sqrt(p_1 p_2)/dP = (p_2 - p_1) / (2 sqrt(p_1 p_2)).
  const double d_energy_dp =
      h(0, 0).real() - h(1, 1).real() + 2.0 * coupling.real() * (p2 - p1) / (2.0 * root);
  rate.dphi_dt = -d_energy_dp;
  return rate;
}

SpherePoint evolve_two_level(const SpherePoint& pt0, double e1, double e2, double t) {
  SpherePoint pt = pt0;
  const bool pole = pt.theta <= 0.0 || pt.theta >= kPi;
  pt.phi = pole ? 0.0 : wrap_phase(pt0.phi - (e1 - e2) * t);
  return pt;
}

}  // namespace prepspace::bloch
