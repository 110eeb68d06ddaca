#include "prepspace/preparation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "prepspace/errors.hpp"

namespace prepspace {

namespace {

constexpr double kPi = std::numbers::pi;

double checked_sum(const std::vector<double>& p) {
  for (double v : p) {
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "non-finite probability");
    if (v < 0.0) throw Error(ErrorCode::NegativeProbability, "p_i = " + std::to_string(v));
  }
  return std::accumulate(p.begin(), p.end(), 0.0);
}

}  // namespace

Preparation::Preparation(std::vector<double> p, std::vector<double> phi)
    : p_(std::move(p)), phi_(std::move(phi)) {
  if (p_.size() != phi_.size()) {
    throw Error(ErrorCode::DimensionMismatch, "p has " + std::to_string(p_.size()) +
                                                  " entries, phi has " + std::to_string(phi_.size()));
  }
  if (p_.size() < 2) throw Error(ErrorCode::DimensionMismatch, "dimension must be at least 2");
  for (double v : phi_) {
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "non-finite phase");
  }
  const double total = checked_sum(p_);
  if (std::abs(total - 1.0) > kNormalizationTolerance) {
    throw Error(ErrorCode::NotNormalized, "probabilities sum to " + std::to_string(total));
  }
  if (total != 1.0) {
    for (double& v : p_) v /= total;
  }
}

double wrap_phase(double angle) noexcept {
  if (angle > -kPi && angle <= kPi) return angle;
  double wrapped = std::remainder(angle, 2.0 * kPi);  // [-pi, pi]
  if (wrapped <= -kPi) wrapped += 2.0 * kPi;
  return wrapped;
}

CartesianChart to_cartesian(const Preparation& prep) {
  CartesianChart chart;
  chart.x.resize(prep.dim());
  chart.y.resize(prep.dim());
  for (std::size_t i = 0; i < prep.dim(); ++i) {
    const double r = std::sqrt(prep.p()[i]);
    chart.x[i] = r * std::cos(prep.phi()[i]);
    chart.y[i] = r * std::sin(prep.phi()[i]);
  }
  return chart;
}

Preparation from_cartesian(const CartesianChart& chart) {
  if (chart.x.size() != chart.y.size()) {
    throw Error(ErrorCode::DimensionMismatch, "x and y differ in length");
  }
  std::vector<double> p(chart.x.size());
  std::vector<double> phi(chart.x.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    p[i] = chart.x[i] * chart.x[i] + chart.y[i] * chart.y[i];
    phi[i] = p[i] < kProbabilityFloor ? 0.0 : std::atan2(chart.y[i], chart.x[i]);
  }
  return Preparation(std::move(p), std::move(phi));
}

Preparation gauge_fix(const Preparation& prep) {
  const auto& p = prep.p();
  std::size_t ref = p.size() - 1;
  while (ref > 0 && p[ref] < kProbabilityFloor) --ref;
  const double reference = prep.phi()[ref];
  std::vector<double> phi(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    phi[i] = p[i] < kProbabilityFloor ? 0.0 : wrap_phase(prep.phi()[i] - reference);
  }
  return Preparation(Preparation::Trusted{}, p, std::move(phi));
}

Preparation shift_all_phases(const Preparation& prep, double shift) {
  std::vector<double> phi = prep.phi();
  for (double& v : phi) v += shift;
  return Preparation(Preparation::Trusted{}, prep.p(), std::move(phi));
}

double prep_distance_check(const Preparation& a, const Preparation& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::DimensionMismatch, "compared preparations differ in dimension");
  const Preparation fa = gauge_fix(a);
  const Preparation fb = gauge_fix(b);
  double worst = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    worst = std::max(worst, std::abs(fa.p()[i] - fb.p()[i]));
    worst = std::max(worst, std::abs(wrap_phase(fa.phi()[i] - fb.phi()[i])));
  }
  return worst;
}

Preparation to_preparation(const PhasePoint& point) { return Preparation(point.p, point.phi); }

}  // namespace prepspace
