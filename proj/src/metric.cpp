#include "prepspace/metric.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "prepspace/errors.hpp"
#include "prepspace/hilbert.hpp"

namespace prepspace {

namespace {

void require_sizes(std::size_t a, std::size_t b) {
  if (a != b) {
    throw Error(ErrorCode::DimensionMismatch,
                "sizes " + std::to_string(a) + " and " + std::to_string(b) + " differ");
  }
}

}  // namespace

double statistical_distance2(std::span<const double> p, std::span<const double> dp) {
  require_sizes(p.size(), dp.size());
  const double drift = std::accumulate(dp.begin(), dp.end(), 0.0);
  if (!(std::abs(drift) <= kNormalizationTolerance)) {
    throw Error(ErrorCode::InvalidArgument, "displacement changes normalization by " + std::to_string(drift));
  }
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (dp[i] == 0.0) continue;
    if (p[i] < kProbabilityFloor) {
      throw Error(ErrorCode::BoundaryState, "dp_i != 0 where p_i vanishes (index " + std::to_string(i) + ")");
    }
    total += dp[i] * dp[i] / (4.0 * p[i]);
  }
  return total;
}

double phase_variance2(std::span<const double> p, std::span<const double> dphi) {
  require_sizes(p.size(), dphi.size());
  double mean = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) mean += p[i] * dphi[i];
  double variance = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double centered = dphi[i] - mean;
    variance += p[i] * centered * centered;
  }
  return variance;
}

LineElementBreakdown line_element2(const Preparation& s, const TangentDisplacement& d) {
  require_sizes(s.dim(), d.dp.size());
  require_sizes(s.dim(), d.dphi.size());
  LineElementBreakdown out;
  out.classical_part = statistical_distance2(s.p(), d.dp);
  out.variance_part = phase_variance2(s.p(), d.dphi);
  out.total = out.classical_part + out.variance_part;
  return out;
}

CartesianChart push_forward(const Preparation& s, const TangentDisplacement& d) {
  require_sizes(s.dim(), d.dp.size());
  require_sizes(s.dim(), d.dphi.size());
  CartesianChart out{std::vector<double>(s.dim()), std::vector<double>(s.dim())};
  for (std::size_t i = 0; i < s.dim(); ++i) {
    const double r = std::sqrt(s.p()[i]);
    const double c = std::cos(s.phi()[i]);
    const double sn = std::sin(s.phi()[i]);
    if (d.dp[i] != 0.0 && s.p()[i] < kProbabilityFloor) {
      throw Error(ErrorCode::BoundaryState, "chart is singular where p_i vanishes");
    }
    const double dr = d.dp[i] == 0.0 ? 0.0 : d.dp[i] / (2.0 * r);
    out.x[i] = dr * c - r * sn * d.dphi[i];
    out.y[i] = dr * sn + r * c * d.dphi[i];
  }
  return out;
}

double cartesian_line_element2(const CartesianChart& at, const CartesianChart& displacement) {
  require_sizes(at.x.size(), displacement.x.size());
  double squared = 0.0;
  double rotation = 0.0;
  for (std::size_t i = 0; i < at.x.size(); ++i) {
    const double dx = displacement.x[i];
    const double dy = displacement.y[i];
    squared += dx * dx + dy * dy;
    rotation += at.x[i] * dy - at.y[i] * dx;
  }
  return squared - rotation * rotation;
}

double fubini_study_angle(const Preparation& s1, const Preparation& s2) {
  require_sizes(s1.dim(), s2.dim());
  const ComplexVector psi1 = hilbert::to_amplitudes(s1).amplitudes();
  const ComplexVector psi2 = hilbert::to_amplitudes(s2).amplitudes();
  const std::complex<double> overlap = psi1.dot(psi2);
  // Chord between psi2 and the phase-aligned psi1: |chord| = 2 sin(angle/2).
  const std::complex<double> align = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : 1.0;
  const double chord = (psi2 - align * psi1).norm();
  return 2.0 * std::asin(std::min(1.0, chord / 2.0));
}

Preparation displace(const Preparation& s, const TangentDisplacement& d, double step) {
  require_sizes(s.dim(), d.dp.size());
  require_sizes(s.dim(), d.dphi.size());
  std::vector<double> p(s.dim());
  std::vector<double> phi(s.dim());
  for (std::size_t i = 0; i < s.dim(); ++i) {
    p[i] = s.p()[i] + step * d.dp[i];
    phi[i] = s.phi()[i] + step * d.dphi[i];
  }
  return Preparation(std::move(p), std::move(phi));
}

double invariance_residual(const FrameChange& f, const Preparation& s,
                           const TangentDisplacement& d, double h) {
  if (!(h > 0.0)) throw Error(ErrorCode::InvalidArgument, "step must be positive");
  const Preparation start = s;
  const Preparation end = displace(s, d, h);
  const Preparation mid = displace(s, d, 0.5 * h);

  const Preparation start_image = apply_frame(f, start);
  const Preparation end_image = apply_frame(f, end);
  const Preparation mid_image = apply_frame(f, mid);
  for (const Preparation* x : {&start, &start_image}) {
    if (*std::min_element(x->p().begin(), x->p().end()) < kProbabilityFloor) {
      throw Error(ErrorCode::BoundaryState, "base point or its image lies on the boundary");
    }
  }

  TangentDisplacement image_d{std::vector<double>(s.dim()), std::vector<double>(s.dim())};
  for (std::size_t i = 0; i < s.dim(); ++i) {
    image_d.dp[i] = (end_image.p()[i] - start_image.p()[i]) / h;
    image_d.dphi[i] = wrap_phase(end_image.phi()[i] - start_image.phi()[i]) / h;
  }

  const double before = line_element2(mid, d).total;
  const double after = line_element2(mid_image, image_d).total;
  if (before == 0.0) return std::abs(after);
  return std::abs(after - before) / before;
}

}  // namespace prepspace
