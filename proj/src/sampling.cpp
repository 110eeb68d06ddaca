#include "prepspace/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "prepspace/errors.hpp"
#include "prepspace/hilbert.hpp"

namespace prepspace {

namespace {

ComplexVector gaussian_vector(Eigen::Index n, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    v(i) = {re, im};
  }
  return v;
}

}  // namespace

ComplexMatrix random_unitary(Eigen::Index n, Rng& rng) {
  ComplexMatrix ginibre(n, n);
  for (Eigen::Index j = 0; j < n; ++j) ginibre.col(j) = gaussian_vector(n, rng);
  const Eigen::HouseholderQR<ComplexMatrix> qr(ginibre);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < n; ++j) {
    const std::complex<double> d = r(j, j);
    if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

Preparation random_preparation(Eigen::Index n, Rng& rng) {
  ComplexVector v = gaussian_vector(n, rng);
  v.normalize();
  return hilbert::to_preparation(hilbert::AmplitudeVector(std::move(v)));
}

Preparation random_interior_preparation(Eigen::Index n, Rng& rng, double min_probability) {
  if (min_probability * static_cast<double>(n) >= 1.0) {
    throw Error(ErrorCode::InvalidArgument, "min_probability leaves no interior");
  }
  for (;;) {
    Preparation s = random_preparation(n, rng);
    if (*std::min_element(s.p().begin(), s.p().end()) >= min_probability) return s;
  }
}

HermitianOperator random_hermitian(Eigen::Index n, Rng& rng, double spectral_norm) {
  ComplexMatrix a(n, n);
  for (Eigen::Index j = 0; j < n; ++j) a.col(j) = gaussian_vector(n, rng);
  const ComplexMatrix h = 0.5 * (a + a.adjoint());
  const Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(h, Eigen::EigenvaluesOnly);
  const double norm = eig.eigenvalues().cwiseAbs().maxCoeff();
  return HermitianOperator(h * (spectral_norm / norm));
}

TangentDisplacement random_displacement(const Preparation& s, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const std::size_t n = s.dim();
  TangentDisplacement d{std::vector<double>(n), std::vector<double>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    d.dp[i] = normal(rng);
    d.dphi[i] = normal(rng);
  }
  const double mean = std::accumulate(d.dp.begin(), d.dp.end(), 0.0) / static_cast<double>(n);
  for (double& v : d.dp) v -= mean;
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) scale = std::max({scale, std::abs(d.dp[i]), std::abs(d.dphi[i])});
  for (std::size_t i = 0; i < n; ++i) {
    d.dp[i] /= scale;
    d.dphi[i] /= scale;
  }
  // Re-center after scaling.
  const double residual = std::accumulate(d.dp.begin(), d.dp.end(), 0.0);
  d.dp[n - 1] -= residual;
  return d;
}

}  // namespace prepspace
