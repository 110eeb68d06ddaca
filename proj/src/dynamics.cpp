#include "prepspace/dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numeric>
#include <span>
#include <string>

#include "prepspace/errors.hpp"

namespace prepspace {

namespace {

constexpr double kSolveTolerance = 1e-13;
constexpr int kMaxSolveIterations = 50;
// Chart threshold factor: a polar step of size dt is only attempted while
// every p_i exceeds (kChartSafety * dt * c_off)^2.
constexpr double kChartSafety = 64.0;

// Triple-jump weights: gamma1 = 1 / (2 - 2^(1/3)), gamma2 = 1 - 2 gamma1.
const double kGamma1 = 1.0 / (2.0 - std::cbrt(2.0));
const double kGamma2 = 1.0 - 2.0 * kGamma1;

void require_dim(std::size_t state, Eigen::Index op) {
  if (static_cast<Eigen::Index>(state) != op) {
    throw Error(ErrorCode::DimensionMismatch, "state is " + std::to_string(state) +
                                                  "-dimensional, operator is " + std::to_string(op));
  }
}

void require_point(const PhasePoint& s) {
  if (s.p.size() != s.phi.size()) throw Error(ErrorCode::DimensionMismatch, "p and phi differ in length");
}

// g_k = conj(psi_k) (H psi)_k with psi_k = sqrt(p_k) exp(i phi_k). Then
// dH/dphi_k = 2 Im g_k and dH/dp_k = Re g_k / p_k.
void local_energy(const HermitianOperator& h, std::span<const double> p, std::span<const double> phi,
                  ComplexVector& psi, ComplexVector& g) {
  const auto n = static_cast<Eigen::Index>(p.size());
  psi.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    psi(i) = std::polar(std::sqrt(p[static_cast<std::size_t>(i)]), phi[static_cast<std::size_t>(i)]);
  }
  // Diagonal term taken as the real H_kk p_k.
  g.resize(n);
  const ComplexMatrix& m = h.matrix();
  for (Eigen::Index k = 0; k < n; ++k) {
    std::complex<double> off = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j != k) off += m(k, j) * psi(j);
    }
    g(k) = m(k, k).real() * p[static_cast<std::size_t>(k)] + std::conj(psi(k)) * off;
  }
}

// Evaluates the canonical vector field without validation; returns false when
// the point left the chart (p <= 0 or non-finite values).
bool polar_field(const HermitianOperator& h, std::span<const double> p, std::span<const double> phi,
                 std::span<double> dp, std::span<double> dphi, ComplexVector& psi, ComplexVector& g) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!(p[i] > 0.0) || !std::isfinite(phi[i])) return false;
  }
  local_energy(h, p, phi, psi, g);
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    dp[i] = 2.0 * g(k).imag();
    dphi[i] = -g(k).real() / p[i];
  }
  return true;
}

class Stepper {
 public:
  Stepper(const HermitianOperator& h, Integrator method)
      : h_(h), method_(method), coupling_(h.off_diagonal_norm()) {
    const auto n = static_cast<std::size_t>(h.dim());
    for (auto* v : {&p0_, &phi0_, &p1_, &phi1_, &pm_, &phim_, &dp_, &dphi_}) v->resize(n);
    for (auto& k : kp_) k.resize(n);
    for (auto& k : kphi_) k.resize(n);
  }

  double chart_threshold(double dt) const {
    const double scale = kChartSafety * dt * coupling_;
    return std::max(kDynamicsFloor, scale * scale);
  }

  // Advances z by dt. Returns true when the step was taken in the Cartesian chart.
  bool step(PhasePoint& z, double dt) {
    const double min_p = *std::min_element(z.p.begin(), z.p.end());
    if (min_p >= chart_threshold(dt)) {
      PhasePoint trial = z;
      if (polar_step(trial, dt)) {
        z = std::move(trial);
        return false;
      }
      trial = z;
      if (polar_step(trial, 0.5 * dt) && polar_step(trial, 0.5 * dt)) {
        z = std::move(trial);
        return false;
      }
    }
    ComplexVector psi = to_amplitudes(z);
    if (!cartesian_step(psi, dt)) {
      psi = to_amplitudes(z);
      if (!(cartesian_step(psi, 0.5 * dt) && cartesian_step(psi, 0.5 * dt))) {
        throw Error(ErrorCode::StepRejected, "implicit solve did not converge in " +
                                                 std::to_string(kMaxSolveIterations) + " iterations");
      }
    }
    from_amplitudes(psi, z);
    return true;
  }

 private:
  bool polar_step(PhasePoint& z, double dt) {
    switch (method_) {
      case Integrator::ImplicitMidpoint:
        return polar_midpoint(z, dt);
      case Integrator::ImplicitMidpoint4:
        return polar_midpoint(z, kGamma1 * dt) && polar_midpoint(z, kGamma2 * dt) &&
               polar_midpoint(z, kGamma1 * dt);
      case Integrator::Rk4Renormalized:
        return polar_rk4(z, dt);
    }
    return false;
  }

  bool cartesian_step(ComplexVector& psi, double dt) {
    switch (method_) {
      case Integrator::ImplicitMidpoint:
        return cartesian_midpoint(psi, dt);
      case Integrator::ImplicitMidpoint4:
        return cartesian_midpoint(psi, kGamma1 * dt) && cartesian_midpoint(psi, kGamma2 * dt) &&
               cartesian_midpoint(psi, kGamma1 * dt);
      case Integrator::Rk4Renormalized:
        cartesian_rk4(psi, dt);
        return psi.allFinite();
    }
    return false;
  }

  // z1 = z0 + dt f((z0 + z1) / 2), solved by fixed-point iteration.
  bool polar_midpoint(PhasePoint& z, double dt) {
    const std::size_t n = z.dim();
    std::copy(z.p.begin(), z.p.end(), p0_.begin());
    std::copy(z.phi.begin(), z.phi.end(), phi0_.begin());
    if (!polar_field(h_, p0_, phi0_, dp_, dphi_, psi_, g_)) return false;
    for (std::size_t i = 0; i < n; ++i) {
      p1_[i] = p0_[i] + dt * dp_[i];
      phi1_[i] = phi0_[i] + dt * dphi_[i];
    }
    for (int iter = 0; iter < kMaxSolveIterations; ++iter) {
      for (std::size_t i = 0; i < n; ++i) {
        pm_[i] = 0.5 * (p0_[i] + p1_[i]);
        phim_[i] = 0.5 * (phi0_[i] + phi1_[i]);
      }
      if (!polar_field(h_, pm_, phim_, dp_, dphi_, psi_, g_)) return false;
      double change = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double p_next = p0_[i] + dt * dp_[i];
        const double phi_next = phi0_[i] + dt * dphi_[i];
        change = std::max({change, std::abs(p_next - p1_[i]), std::abs(phi_next - phi1_[i])});
        p1_[i] = p_next;
        phi1_[i] = phi_next;
      }
      if (!std::isfinite(change)) return false;
      if (change <= kSolveTolerance) {
        if (*std::min_element(p1_.begin(), p1_.end()) <= 0.0) return false;
        std::copy(p1_.begin(), p1_.end(), z.p.begin());
        std::copy(phi1_.begin(), phi1_.end(), z.phi.begin());
        return true;
      }
    }
    return false;
  }

  bool polar_rk4(PhasePoint& z, double dt) {
    const std::size_t n = z.dim();
    static constexpr std::array<double, 4> kStageOffset{0.0, 0.5, 0.5, 1.0};
    for (std::size_t stage = 0; stage < 4; ++stage) {
      for (std::size_t i = 0; i < n; ++i) {
        const double offset = kStageOffset[stage] * dt;
        pm_[i] = z.p[i] + (stage == 0 ? 0.0 : offset * kp_[stage - 1][i]);
        phim_[i] = z.phi[i] + (stage == 0 ? 0.0 : offset * kphi_[stage - 1][i]);
      }
      if (!polar_field(h_, pm_, phim_, kp_[stage], kphi_[stage], psi_, g_)) return false;
    }
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      z.p[i] += dt / 6.0 * (kp_[0][i] + 2.0 * kp_[1][i] + 2.0 * kp_[2][i] + kp_[3][i]);
      z.phi[i] += dt / 6.0 * (kphi_[0][i] + 2.0 * kphi_[1][i] + 2.0 * kphi_[2][i] + kphi_[3][i]);
      if (!(z.p[i] > 0.0)) return false;
      total += z.p[i];
    }
    for (double& v : z.p) v /= total;
    return true;
  }

  // Implicit midpoint for i d(psi)/dt = H psi, by fixed-point iteration.
  bool cartesian_midpoint(ComplexVector& psi, double dt) {
    using namespace std::complex_literals;
    const ComplexVector start = psi;
    ComplexVector next = start - 1.0i * dt * (h_.matrix() * start);
    for (int iter = 0; iter < kMaxSolveIterations; ++iter) {
      const ComplexVector mid = 0.5 * (start + next);
      ComplexVector candidate = start - 1.0i * dt * (h_.matrix() * mid);
      const double change = (candidate - next).cwiseAbs().maxCoeff();
      next = std::move(candidate);
      if (!std::isfinite(change)) return false;
      if (change <= kSolveTolerance) {
        psi = next;
        return true;
      }
    }
    return false;
  }

  void cartesian_rk4(ComplexVector& psi, double dt) {
    using namespace std::complex_literals;
    const auto field = [this](const ComplexVector& v) -> ComplexVector { return -1.0i * (h_.matrix() * v); };
    const ComplexVector k1 = field(psi);
    const ComplexVector k2 = field(psi + 0.5 * dt * k1);
    const ComplexVector k3 = field(psi + 0.5 * dt * k2);
    const ComplexVector k4 = field(psi + dt * k3);
    psi += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    psi.normalize();
  }

  static ComplexVector to_amplitudes(const PhasePoint& z) {
    ComplexVector psi(static_cast<Eigen::Index>(z.dim()));
    for (std::size_t i = 0; i < z.dim(); ++i) {
      psi(static_cast<Eigen::Index>(i)) = std::polar(std::sqrt(std::max(z.p[i], 0.0)), z.phi[i]);
    }
    return psi;
  }

  // Back to (p, phi), keeping each phase on the branch nearest its old value.
  static void from_amplitudes(const ComplexVector& psi, PhasePoint& z) {
    for (std::size_t i = 0; i < z.dim(); ++i) {
      const std::complex<double> a = psi(static_cast<Eigen::Index>(i));
      z.p[i] = std::norm(a);
      z.phi[i] += wrap_phase(std::arg(a) - z.phi[i]);
    }
  }

  const HermitianOperator& h_;
  Integrator method_;
  double coupling_;
  std::vector<double> p0_, phi0_, p1_, phi1_, pm_, phim_, dp_, dphi_;
  std::array<std::vector<double>, 4> kp_, kphi_;
  ComplexVector psi_, g_;
};

struct StepInfo {
  std::size_t index = 0;  // 1-based step number
  double time = 0.0;
  bool cartesian = false;
};

// Runs n_steps uniform steps, calling observe after each one.
void integrate(PhasePoint& z, const HermitianOperator& h, std::size_t n_steps, double step,
               Integrator method, const std::function<void(const PhasePoint&, const StepInfo&)>& observe) {
  Stepper stepper(h, method);
  for (std::size_t k = 1; k <= n_steps; ++k) {
    const bool cartesian = stepper.step(z, step);
    if (observe) observe(z, StepInfo{k, static_cast<double>(k) * step, cartesian});
  }
}

std::size_t step_count(double t, double dt) {
  if (t == 0.0) return 0;
  return static_cast<std::size_t>(std::max(1.0, std::ceil(t / dt * (1.0 - 1e-12))));
}

void require_timing(double t, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw Error(ErrorCode::InvalidArgument, "dt must be positive");
  if (!(t >= 0.0) || !std::isfinite(t)) throw Error(ErrorCode::InvalidArgument, "final time must be non-negative");
}

}  // namespace

std::string_view to_string(Integrator method) noexcept {
  switch (method) {
    case Integrator::ImplicitMidpoint: return "implicit-midpoint";
    case Integrator::ImplicitMidpoint4: return "implicit-midpoint-4";
    case Integrator::Rk4Renormalized: return "rk4-renormalized";
  }
  return "unknown";
}

Integrator parse_integrator(std::string_view name) {
  for (Integrator m : {Integrator::ImplicitMidpoint, Integrator::ImplicitMidpoint4, Integrator::Rk4Renormalized}) {
    if (name == to_string(m)) return m;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown integrator '" + std::string(name) + "'");
}

double mean_value(const PhasePoint& s, const HermitianOperator& f) {
  require_point(s);
  require_dim(s.dim(), f.dim());
  double re = 0.0;
  double im = 0.0;
  for (std::size_t i = 0; i < s.dim(); ++i) {
    for (std::size_t j = 0; j < s.dim(); ++j) {
      const std::complex<double> fij = f(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      const double weight = std::sqrt(s.p[i] * s.p[j]);
      const double angle = s.phi[i] - s.phi[j];
      const double c = std::cos(angle);
      const double sn = std::sin(angle);
      re += weight * (fij.real() * c + fij.imag() * sn);
      im += weight * (fij.imag() * c - fij.real() * sn);
    }
  }
  const double total = std::accumulate(s.p.begin(), s.p.end(), 0.0);
  if (!(std::abs(im) <= 1e-12 * std::max(1.0, f.matrix().norm() * total))) {
    throw Error(ErrorCode::NotHermitian, "mean value has imaginary residue " + std::to_string(im));
  }
  return re;
}

double mean_value(const Preparation& s, const HermitianOperator& f) { return mean_value(s.point(), f); }

MeanValueGradient mean_value_gradient(const PhasePoint& s, const HermitianOperator& f) {
  require_point(s);
  require_dim(s.dim(), f.dim());
  for (std::size_t i = 0; i < s.dim(); ++i) {
    if (!(s.p[i] >= kDynamicsFloor)) {
      throw Error(ErrorCode::BoundaryState, "p_" + std::to_string(i + 1) + " below the dynamics floor");
    }
  }
  MeanValueGradient grad{std::vector<double>(s.dim()), std::vector<double>(s.dim())};
  ComplexVector psi, g;
  local_energy(f, s.p, s.phi, psi, g);
  for (std::size_t i = 0; i < s.dim(); ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    grad.d_dp[i] = g(k).real() / s.p[i];
    grad.d_dphi[i] = 2.0 * g(k).imag();
  }
  return grad;
}

TangentDisplacement hamilton_rhs(const PhasePoint& s, const HermitianOperator& h) {
  MeanValueGradient grad = mean_value_gradient(s, h);
  TangentDisplacement rate{std::move(grad.d_dphi), std::move(grad.d_dp)};
  for (double& v : rate.dphi) v = -v;
  return rate;
}

TangentDisplacement hamilton_rhs(const Preparation& s, const HermitianOperator& h) {
  return hamilton_rhs(s.point(), h);
}

Trajectory evolve(const Preparation& s0, const HermitianOperator& h, double t_final, double dt,
                  const EvolveOptions& options) {
  require_timing(t_final, dt);
  require_dim(s0.dim(), h.dim());
  const std::size_t n_steps = step_count(t_final, dt);
  const double step = n_steps == 0 ? dt : t_final / static_cast<double>(n_steps);
  const std::size_t stride = std::max<std::size_t>(1, options.record_every);

  Trajectory traj;
  traj.dt = step;
  traj.method = options.method;
  const auto record = [&](const PhasePoint& z, double t) {
    traj.times.push_back(t);
    traj.energy.push_back(mean_value(z, h));
    traj.norm.push_back(std::accumulate(z.p.begin(), z.p.end(), 0.0));
    traj.states.push_back(to_preparation(z));
  };

  PhasePoint z = s0.point();
  record(z, 0.0);
  bool in_cartesian = false;
  integrate(z, h, n_steps, step, options.method, [&](const PhasePoint& state, const StepInfo& info) {
    if (info.cartesian != in_cartesian) {
      traj.chart_switches.push_back(
          {info.index, info.time, *std::min_element(state.p.begin(), state.p.end())});
      in_cartesian = info.cartesian;
    }
    if (info.index % stride == 0 || info.index == n_steps) {
      record(state, info.index == n_steps ? t_final : info.time);
    }
  });
  return traj;
}

PhasePoint flow(const PhasePoint& s0, const HermitianOperator& h, double t, double dt, Integrator method) {
  require_point(s0);
  require_timing(t, dt);
  require_dim(s0.dim(), h.dim());
  const std::size_t n_steps = step_count(t, dt);
  PhasePoint z = s0;
  if (n_steps > 0) integrate(z, h, n_steps, t / static_cast<double>(n_steps), method, {});
  return z;
}

double poisson_bracket(const HermitianOperator& f, const HermitianOperator& g, const Preparation& s) {
  const MeanValueGradient df = mean_value_gradient(s.point(), f);
  const MeanValueGradient dg = mean_value_gradient(s.point(), g);
  double bracket = 0.0;
  for (std::size_t i = 0; i < s.dim(); ++i) {
    bracket += df.d_dp[i] * dg.d_dphi[i] - df.d_dphi[i] * dg.d_dp[i];
  }
  return bracket;
}

double flow_volume_residual(const HermitianOperator& h, const Preparation& s, double t, double probe) {
  require_dim(s.dim(), h.dim());
  if (!(probe > 0.0)) throw Error(ErrorCode::InvalidArgument, "probe step must be positive");
  if (!(t >= 0.0)) throw Error(ErrorCode::InvalidArgument, "flow time must be non-negative");
  if (t == 0.0) return 0.0;
  constexpr double kFlowStep = 1e-3;
  const std::size_t n = s.dim();
  const std::size_t n_steps = step_count(t, kFlowStep);
  const double step = t / static_cast<double>(n_steps);

  // Tests the closest approach of each amplitude's chord over a step.
  const auto run = [&](PhasePoint z) {
    PhasePoint prev = z;
    integrate(z, h, n_steps, step, Integrator::ImplicitMidpoint4, [&](const PhasePoint& state, const StepInfo&) {
      for (std::size_t i = 0; i < n; ++i) {
        const std::complex<double> a = std::polar(std::sqrt(prev.p[i]), prev.phi[i]);
        const std::complex<double> b = std::polar(std::sqrt(std::max(state.p[i], 0.0)), state.phi[i]);
        const std::complex<double> d = b - a;
        const double len2 = std::norm(d);
        const double lambda = len2 > 0.0 ? std::clamp(-(std::conj(a) * d).real() / len2, 0.0, 1.0) : 0.0;
        if (std::norm(a + lambda * d) < kDynamicsFloor) {
          throw Error(ErrorCode::BoundaryCrossing, "flow left the interior of the preparation space");
        }
      }
      prev = state;
    });
    return z;
  };

  RealMatrix jacobian(2 * n, 2 * n);
  const PhasePoint origin = s.point();
  for (std::size_t c = 0; c < 2 * n; ++c) {
    PhasePoint plus = origin;
    PhasePoint minus = origin;
    auto& coord_plus = c < n ? plus.p[c] : plus.phi[c - n];
    auto& coord_minus = c < n ? minus.p[c] : minus.phi[c - n];
    coord_plus += probe;
    coord_minus -= probe;
    const PhasePoint a = run(plus);
    const PhasePoint b = run(minus);
    for (std::size_t r = 0; r < n; ++r) {
      jacobian(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = (a.p[r] - b.p[r]) / (2.0 * probe);
      jacobian(static_cast<Eigen::Index>(n + r), static_cast<Eigen::Index>(c)) =
          (a.phi[r] - b.phi[r]) / (2.0 * probe);
    }
  }
  return std::abs(jacobian.determinant() - 1.0);
}

double conserved_energy_drift(const Trajectory& traj) {
  double drift = 0.0;
  for (double e : traj.energy) drift = std::max(drift, std::abs(e - traj.energy.front()));
  return drift;
}

}  // namespace prepspace
