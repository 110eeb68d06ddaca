#pragma once

// Reference computations on complex amplitudes, independent of the library's
// hilbert module.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "prepspace/frame.hpp"
#include "prepspace/hermitian.hpp"
#include "prepspace/preparation.hpp"

namespace oracle {

using prepspace::ComplexMatrix;
using prepspace::ComplexVector;
using prepspace::Preparation;
using prepspace::RealMatrix;

inline ComplexVector amplitudes(const Preparation& s) {
  ComplexVector psi(static_cast<Eigen::Index>(s.dim()));
  for (std::size_t i = 0; i < s.dim(); ++i) {
    psi(static_cast<Eigen::Index>(i)) = std::polar(std::sqrt(s.p()[i]), s.phi()[i]);
  }
  return psi;
}

inline Preparation preparation(const ComplexVector& psi) {
  const double norm2 = psi.squaredNorm();
  std::vector<double> p, phi;
  for (Eigen::Index i = 0; i < psi.size(); ++i) {
    p.push_back(std::norm(psi(i)) / norm2);
    phi.push_back(std::arg(psi(i)));
  }
  return Preparation(p, phi);
}

// exp(-i t H) by scaling and squaring of a truncated Taylor series.
inline ComplexMatrix expm(const ComplexMatrix& h, double t) {
  using namespace std::complex_literals;
  const ComplexMatrix a = -1.0i * t * h;
  const double norm = a.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  while (std::ldexp(norm, -squarings) > 0.25) ++squarings;
  const ComplexMatrix b = a * std::ldexp(1.0, -squarings);
  ComplexMatrix term = ComplexMatrix::Identity(h.rows(), h.cols());
  ComplexMatrix sum = term;
  for (int k = 1; k <= 24; ++k) {
    term = term * b / static_cast<double>(k);
    sum += term;
  }
  for (int k = 0; k < squarings; ++k) sum = sum * sum;
  return sum;
}

inline Preparation evolve(const prepspace::HermitianOperator& h, const Preparation& s, double t) {
  return preparation(expm(h.matrix(), t) * amplitudes(s));
}

// psi'_i = sum_j conj(u_ji) psi_j
inline ComplexVector frame_image(const ComplexMatrix& u, const ComplexVector& psi) {
  ComplexVector out = ComplexVector::Zero(psi.size());
  for (Eigen::Index i = 0; i < psi.size(); ++i) {
    for (Eigen::Index j = 0; j < psi.size(); ++j) out(i) += std::conj(u(j, i)) * psi(j);
  }
  return out;
}

// Angle between rays, from the overlap and the component orthogonal to psi1.
inline double ray_angle(const ComplexVector& psi1, const ComplexVector& psi2) {
  const ComplexVector a = psi1.normalized();
  const ComplexVector b = psi2.normalized();
  const std::complex<double> overlap = a.dot(b);
  return std::atan2((b - overlap * a).norm(), std::abs(overlap));
}

// (1/i) <psi|[F, G]|psi>
inline double commutator(const ComplexMatrix& f, const ComplexMatrix& g, const ComplexVector& psi) {
  const std::complex<double> v = psi.dot((f * g - g * f) * psi);
  return (v / std::complex<double>(0.0, 1.0)).real();
}

inline double max_abs(const RealMatrix& m) { return m.cwiseAbs().maxCoeff(); }

// Richardson-extrapolated central differences of the raw frame map. Default
// step: min(1e-4, 0.1 * smallest p of s and of its image).
inline RealMatrix jacobian(const prepspace::FrameChange& f, const Preparation& s, double step = 0.0) {
  using prepspace::PhasePoint;
  const std::size_t n = s.dim();
  const PhasePoint origin = s.point();
  const PhasePoint base = prepspace::transform_point(f, origin);
  if (step <= 0.0) {
    double smallest = 1.0;
    for (std::size_t i = 0; i < n; ++i) smallest = std::min({smallest, origin.p[i], base.p[i]});
    step = std::min(1e-4, 0.1 * smallest);
  }
  const auto image = [&](const PhasePoint& z) {
    const PhasePoint img = prepspace::transform_point(f, z);
    Eigen::VectorXd out(static_cast<Eigen::Index>(2 * n));
    for (std::size_t i = 0; i < n; ++i) {
      out(static_cast<Eigen::Index>(i)) = img.p[i];
      out(static_cast<Eigen::Index>(n + i)) = base.phi[i] + prepspace::wrap_phase(img.phi[i] - base.phi[i]);
    }
    return out;
  };
  RealMatrix m(static_cast<Eigen::Index>(2 * n), static_cast<Eigen::Index>(2 * n));
  for (std::size_t c = 0; c < 2 * n; ++c) {
    const auto diff = [&](double d) {
      PhasePoint plus = origin, minus = origin;
      (c < n ? plus.p[c] : plus.phi[c - n]) += d;
      (c < n ? minus.p[c] : minus.phi[c - n]) -= d;
      return Eigen::VectorXd((image(plus) - image(minus)) / (2.0 * d));
    };
    m.col(static_cast<Eigen::Index>(c)) = (4.0 * diff(0.5 * step) - diff(step)) / 3.0;
  }
  return m;
}

}  // namespace oracle
