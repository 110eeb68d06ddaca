#include "prepspace/frame.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "prepspace/errors.hpp"
#include "prepspace/sampling.hpp"

namespace prepspace {

namespace {

constexpr double kInteriorProbability = 1e-6;

void require_same_dim(Eigen::Index frame_dim, std::size_t state_dim) {
  if (frame_dim != static_cast<Eigen::Index>(state_dim)) {
    throw Error(ErrorCode::DimensionMismatch, "frame is " + std::to_string(frame_dim) +
                                                  "-dimensional, state is " + std::to_string(state_dim));
  }
}

void require_valid(const FrameChange& f) {
  const FrameResidual residual = validate_frame(f);
  if (!residual.valid()) {
    throw Error(ErrorCode::InvalidFrame, "constraint residual " + std::to_string(residual.max()));
  }
}

}  // namespace

double SymplecticMatrices::symplectic_residual() const {
  return (m * j * m.transpose() - j).cwiseAbs().maxCoeff();
}

FrameChange frame_from_unitary(const ComplexMatrix& u) {
  const double residual = unitarity_residual(u);
  if (!(residual <= FrameResidual::kFrameTolerance)) {
    throw Error(ErrorCode::NotUnitary, "||u^dagger u - 1||_max = " + std::to_string(residual));
  }
  const Eigen::Index n = u.rows();
  FrameChange f{RealMatrix(n, n), RealMatrix(n, n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const std::complex<double> entry = u(j, i);
      f.w(i, j) = std::norm(entry);
      f.beta(i, j) = entry == 0.0 ? 0.0 : std::arg(entry);
    }
  }
  return f;
}

ComplexMatrix unitary_from_frame(const FrameChange& f) {
  const Eigen::Index n = f.dim();
  ComplexMatrix u(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      u(j, i) = std::polar(std::sqrt(f.w(i, j)), f.beta(i, j));
    }
  }
  return u;
}

FrameResidual validate_frame(const FrameChange& f) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  const Eigen::Index n = f.w.rows();
  if (n == 0 || f.w.cols() != n || f.beta.rows() != n || f.beta.cols() != n) {
    return {kInf, kInf};
  }
  FrameResidual r;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (!(f.w(i, j) >= 0.0)) r.stochastic = std::max(r.stochastic, std::abs(f.w(i, j)));
      if (!std::isfinite(f.beta(i, j))) r.orthogonality = kInf;
    }
  }
  if (r.stochastic > 0.0) return r;  // square roots below would be meaningless

  for (Eigen::Index i = 0; i < n; ++i) {
    r.stochastic = std::max(r.stochastic, std::abs(f.w.row(i).sum() - 1.0));
    r.stochastic = std::max(r.stochastic, std::abs(f.w.col(i).sum() - 1.0));
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = j + 1; k < n; ++k) {
      double cos_cols = 0.0, sin_cols = 0.0, cos_rows = 0.0, sin_rows = 0.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        const double col_weight = std::sqrt(f.w(i, j) * f.w(i, k));
        const double col_angle = f.beta(i, k) - f.beta(i, j);
        cos_cols += col_weight * std::cos(col_angle);
        sin_cols += col_weight * std::sin(col_angle);
        const double row_weight = std::sqrt(f.w(j, i) * f.w(k, i));
        const double row_angle = f.beta(k, i) - f.beta(j, i);
        cos_rows += row_weight * std::cos(row_angle);
        sin_rows += row_weight * std::sin(row_angle);
      }
      r.orthogonality = std::max({r.orthogonality, std::abs(cos_cols), std::abs(sin_cols),
                                  std::abs(cos_rows), std::abs(sin_rows)});
    }
  }
  return r;
}

PhasePoint transform_point(const FrameChange& f, const PhasePoint& s) {
  const Eigen::Index n = f.dim();
  PhasePoint out{std::vector<double>(s.dim()), std::vector<double>(s.dim())};
  for (Eigen::Index i = 0; i < n; ++i) {
    double x = 0.0, y = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto jj = static_cast<std::size_t>(j);
      const double weight = std::sqrt(f.w(i, j) * s.p[jj]);
      const double angle = s.phi[jj] - f.beta(i, j);
      x += weight * std::cos(angle);
      y += weight * std::sin(angle);
    }
    const auto ii = static_cast<std::size_t>(i);
    out.p[ii] = x * x + y * y;
    out.phi[ii] = std::atan2(y, x);
  }
  return out;
}

Preparation apply_frame(const FrameChange& f, const Preparation& s) {
  require_same_dim(f.dim(), s.dim());
  require_valid(f);
  PhasePoint image = transform_point(f, s.point());
  for (std::size_t i = 0; i < image.dim(); ++i) {
    if (image.p[i] < kProbabilityFloor) image.phi[i] = 0.0;
  }
  return to_preparation(image);
}

ProbabilitySplit probability_split(const FrameChange& f, const Preparation& s) {
  const Preparation image = apply_frame(f, s);
  ProbabilitySplit split{image.p(), std::vector<double>(s.dim(), 0.0), std::vector<double>(s.dim())};
  for (std::size_t i = 0; i < s.dim(); ++i) {
    for (std::size_t j = 0; j < s.dim(); ++j) {
      split.classical[i] += f.w(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * s.p()[j];
    }
    split.interference[i] = split.transformed[i] - split.classical[i];
  }
  return split;
}

RealPairTransform to_real_pair(const FrameChange& f) {
  const RealMatrix root = f.w.cwiseSqrt();
  return {root.cwiseProduct(f.beta.array().cos().matrix()),
          root.cwiseProduct(f.beta.array().sin().matrix())};
}

double real_pair_validate(const RealPairTransform& t) {
  const Eigen::Index n = t.a.rows();
  if (n == 0 || t.a.cols() != n || t.b.rows() != n || t.b.cols() != n) {
    return std::numeric_limits<double>::infinity();
  }
  const RealMatrix id = RealMatrix::Identity(n, n);
  // Column form: sum_i (a_ij a_ik + b_ij b_ik) = delta_jk, sum_i (a_ij b_ik - b_ij a_ik) = 0.
  const double col_norm = (t.a.transpose() * t.a + t.b.transpose() * t.b - id).cwiseAbs().maxCoeff();
  const double col_skew = (t.a.transpose() * t.b - t.b.transpose() * t.a).cwiseAbs().maxCoeff();
  // Row form: the same with the index order transposed.
  const double row_norm = (t.a * t.a.transpose() + t.b * t.b.transpose() - id).cwiseAbs().maxCoeff();
  const double row_skew = (t.a * t.b.transpose() - t.b * t.a.transpose()).cwiseAbs().maxCoeff();
  return std::max({col_norm, col_skew, row_norm, row_skew});
}

SymplecticMatrices frame_jacobian(const FrameChange& f, const Preparation& s) {
  require_same_dim(f.dim(), s.dim());
  require_valid(f);
  const Eigen::Index n = f.dim();
  const auto& p = s.p();
  const auto& phi = s.phi();
  for (double v : p) {
    if (v < kInteriorProbability) throw Error(ErrorCode::BoundaryState, "p_i below 1e-6");
  }

  // C_ij, S_ij = sum_k sqrt(w_ij p_j) sqrt(w_ik p_k) {cos, sin}(phi_jk - beta_ij + beta_ik)
  RealMatrix c = RealMatrix::Zero(n, n);
  RealMatrix sn = RealMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double wj = std::sqrt(f.w(i, j) * p[static_cast<std::size_t>(j)]);
      for (Eigen::Index k = 0; k < n; ++k) {
        if (k == j) {
          c(i, j) += f.w(i, j) * p[static_cast<std::size_t>(j)];
          continue;
        }
        const double wk = std::sqrt(f.w(i, k) * p[static_cast<std::size_t>(k)]);
        const double angle = phi[static_cast<std::size_t>(j)] - phi[static_cast<std::size_t>(k)] -
                             f.beta(i, j) + f.beta(i, k);
        c(i, j) += wj * wk * std::cos(angle);
        sn(i, j) += wj * wk * std::sin(angle);
      }
    }
  }

  SymplecticMatrices out{RealMatrix::Zero(2 * n, 2 * n), RealMatrix::Zero(2 * n, 2 * n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    const double transformed = c.row(i).sum();  // p'_i
    if (transformed < kInteriorProbability) {
      throw Error(ErrorCode::BoundaryState, "transformed p'_i below 1e-6");
    }
    for (Eigen::Index j = 0; j < n; ++j) {
      const double pj = p[static_cast<std::size_t>(j)];
      out.m(i, j) = c(i, j) / pj;
      out.m(i, n + j) = -2.0 * sn(i, j);
      out.m(n + i, j) = sn(i, j) / (2.0 * pj * transformed);
      out.m(n + i, n + j) = c(i, j) / transformed;
    }
    out.j(i, n + i) = 1.0;
    out.j(n + i, i) = -1.0;
  }
  return out;
}

FrameChange random_frame(Eigen::Index n, std::uint64_t seed) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "frame dimension must be at least 2");
  Rng rng(seed);
  return frame_from_unitary(random_unitary(n, rng));
}

namespace detail {

double general_linear_residual(const RealMatrix& a, const RealMatrix& b, const RealMatrix& c,
                               const RealMatrix& d) {
  const Eigen::Index n = a.rows();
  const RealMatrix id = RealMatrix::Identity(n, n);
  // Norm preservation.
  const double norm_ac = (a.transpose() * a + c.transpose() * c - id).cwiseAbs().maxCoeff();
  const double norm_bd = (b.transpose() * b + d.transpose() * d - id).cwiseAbs().maxCoeff();
  const double cross = (a.transpose() * b + c.transpose() * d).cwiseAbs().maxCoeff();
  // Invariance of the phase term sum (x dy - y dx).
  const double skew_ac = (a.transpose() * c - c.transpose() * a).cwiseAbs().maxCoeff();
  const double skew_bd = (b.transpose() * d - d.transpose() * b).cwiseAbs().maxCoeff();
  const double mixed = (a.transpose() * d - c.transpose() * b - id).cwiseAbs().maxCoeff();
  return std::max({norm_ac, norm_bd, cross, skew_ac, skew_bd, mixed});
}

}  // namespace detail

}  // namespace prepspace
