#include "prepspace/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <future>
#include <limits>
#include <numbers>
#include <numeric>

#include "prepspace/bloch.hpp"
#include "prepspace/dynamics.hpp"
#include "prepspace/frame.hpp"
#include "prepspace/hilbert.hpp"
#include "prepspace/metric.hpp"
#include "prepspace/preparation.hpp"
#include "prepspace/sampling.hpp"

namespace prepspace {

namespace {

constexpr double kPi = std::numbers::pi;

using CheckFn = std::function<double(Eigen::Index n, std::size_t cases, Rng& rng)>;

struct CheckEntry {
  std::string name;
  bool two_level_only = false;
  std::size_t cases = 0;
  double tolerance = 0.0;
  CheckFn run;
};

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

Preparation interior(Eigen::Index n, Rng& rng) {
  return random_interior_preparation(n, rng, 0.1 / static_cast<double>(n));
}

// Random displacement with |dp_i| <= p_i.
TangentDisplacement relative_displacement(const Preparation& s, Rng& rng) {
  TangentDisplacement d = random_displacement(s, rng);
  double ratio = 0.0;
  for (std::size_t i = 0; i < s.dim(); ++i) ratio = std::max(ratio, std::abs(d.dp[i]) / s.p()[i]);
  if (ratio > 1.0) {
    for (double& v : d.dp) v /= ratio;
  }
  return d;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

Preparation oracle_image(const ComplexMatrix& u, const Preparation& s) {
  return hilbert::to_preparation(hilbert::apply_unitary(u, hilbert::to_amplitudes(s)));
}

Preparation oracle_evolve(const HermitianOperator& h, const Preparation& s, double t) {
  return hilbert::to_preparation(hilbert::propagate(h, hilbert::to_amplitudes(s), t));
}

// Fourth-order (Richardson) central difference of g along coordinate c of s.
template <typename G>
auto richardson(const PhasePoint& s, std::size_t c, double step, G&& g) {
  const auto diff = [&](double d) {
    PhasePoint plus = s;
    PhasePoint minus = s;
    auto& cp = c < s.dim() ? plus.p[c] : plus.phi[c - s.dim()];
    auto& cm = c < s.dim() ? minus.p[c] : minus.phi[c - s.dim()];
    cp += d;
    cm -= d;
    auto a = g(plus);
    auto b = g(minus);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = (a[i] - b[i]) / (2.0 * d);
    return a;
  };
  auto coarse = diff(step);
  auto fine = diff(0.5 * step);
  for (std::size_t i = 0; i < fine.size(); ++i) fine[i] = (4.0 * fine[i] - coarse[i]) / 3.0;
  return fine;
}

std::vector<CheckEntry> registry() {
  std::vector<CheckEntry> checks;
  const auto add = [&](std::string name, std::size_t cases, double tolerance, CheckFn fn, bool two_level = false) {
    checks.push_back(CheckEntry{std::move(name), two_level, cases, tolerance, std::move(fn)});
  };

  // prep_state
  add("prep.cartesian_round_trip", 100, 1e-12, [](Eigen::Index n, std::size_t cases, Rng& rng) {
    double worst = 0.0;
    for (std::size_t k = 0; k < cases; ++k) {
      const CartesianChart c = to_cartesian(random_preparation(n, rng));
      const CartesianChart back = to_cartesian(from_cartesian(c));
      worst = std::max({worst, max_abs_diff(c.x, back.x), max_abs_diff(c.y, back.y)});
    }
    return worst;
  });
  add("prep.chart_probability_sum", 100, 1e-12, [](Eigen::Index n, std::size_t cases, Rng& rng) {
    double worst = 0.0;
    for (std::size_t k = 0; k < cases; ++k) {
      const Preparation s = random_preparation(n, rng);
      const CartesianChart c = to_cartesian(s);
      const double before = std::accumulate(s.p().begin(), s.p().end(), 0.0);
      double after = 0.0;
      for (std::size_t i = 0; i < s.dim(); ++i) after += c.x[i] * c.x[i] + c.y[i] * c.y[i];
      const Preparation back = from_cartesian(c);
      const double again = std::accumulate(back.p().begin(), back.p().end(), 0.0);
      worst = std::max({worst, std::abs(after - before), std::abs(again - before)});
    }
    return worst;
  });
  add("prep.gauge_fix_idempotent", 100, 0.0, [](Eigen::Index n, std::size_t cases, Rng& rng) {
    double worst = 0.0;
    for (std::size_t k = 0; k < cases; ++k) {
      const Preparation once = gauge_fix(shift_all_phases(random_preparation(n, rng), uniform(rng, -20, 20)));
      const Preparation twice = gauge_fix(once);
      worst = std::max({worst, max_abs_diff(once.p(), twice.p()), max_abs_diff(once.phi(), twice.phi())});
    }
    return worst;
  });
  add("prep.gauge_shift_invariance", 100, 1e-12, [](Eigen::Index n, std::size_t cases, Rng& rng) {
    double worst = 0.0;
    for (std::size_t k = 0; k < cases; ++k) {
      const Preparation s = random_preparation(n, rng);
      worst = std::max(worst, prep_distance_check(s, shift_all_phases(s, uniform(rng, -20, 20))));
    }
    return worst;
  });

  // frame_transform
  add("frame.unitary_constraints", 100, 1e-10, [](Eigen::Index n, std::size_t cases, Rng& rng) {
    double worst = 0.0;
    for (std::size_t k = 0; k < cases; ++k) {
      worst = std::max(worst, validate_frame(frame_from_unitary(random_unitary(n, rng))).max());
    }
    return worst;
  });
  add("frame.real_pair_constraints", 100, 1e-12, [](Eigen::Index n, std::size_t cases, Rng& rng) {
    double worst = 0.0;
    for (std::size_t k = 0; k < cases; ++k) {
      worst = std::max(worst, real_pair_validate(to_real_pair(frame_from_unitary(random_unitary(n, rng)))));
    }
    return worst;
  });
  add("frame.probability_conservation", 100, 1e-12, [](Eigen::Index n, std::size_t cases, Rng& rng) {
    double worst = 0.0;
    for (std::size_t k = 0; k < cases; ++k) {
      const FrameChange f = frame_from_unitary(random_unitary(n, rng));
      const Preparation s = random_preparation(n, rng);
      const PhasePoint image = transform_point(f, s.point());
      const double before = std::accumulate(s.p().begin(), s.p().end(), 0.0);
      const double after = std::accumulate(image.p.begin(), image.p.end(), 0.0);
      worst = std::max(worst, std::abs(after - before));
    }
    return worst;
  });
  add("frame.interference_sum", 100, 1e-12, [](Eigen::Index n, std::size_t cases, Rng& rng) {
    double worst = 0.0;
    for (std::size_t k = 0; k < cases; ++k) {
      const ProbabilitySplit split =
          probability_split(frame_from_unitary(random_unitary(n, rng)), random_preparation(n, rng));
      worst = std::max(worst, std::abs(std::accumulate(split.interference.begin(), split.interference.end(), 0.0)));
    }
    return worst;
  });
  add("frame.oracle_equivalence", 100, 1e-9, [](Eigen::Index n, std::size_t cases, Rng& rng) {
    double worst = 0.0;
    for (std::size_t k = 0; k < cases; ++k) {
      const ComplexMatrix u = random_unitary(n, rng);
      const Preparation s = random_preparation(n, rng);
      worst = std::max(worst, prep_distance_check(apply_frame(frame_from_unitary(u), s), oracle_image(u, s)));
    }
    return worst;
  });
  add("frame.composition", 100, 1e-9, [](Eigen::Index n, std::size_t cases, Rng& rng) {
    double worst = 0.0;
    for (std::size_t k = 0; k < cases; ++k) {
      const ComplexMatrix u1 = random_unitary(n, rng);
      const ComplexMatrix u2 = random_unitary(n, rng);
      const Preparation s = random_preparation(n, rng);
      const Preparation stepwise = apply_frame(frame_from_unitary(u2), apply_frame(frame_from_unitary(u1), s));
      const Preparation composed = apply_frame(frame_from_unitary(u1 * u2), s);
      worst = std::max(worst, prep_distance_check(stepwise, composed));
    }
    return worst;
  });
  add("frame.symplectic_condition", 100, 1e-8, [](Eigen::Index n, std::size_t cases, Rng& rng) {
    double worst = 0.0;
    for (std::size_t k = 0; k < cases; ++k) {
      const FrameChange f = frame_from_unitary(random_unitary(n, rng));
      worst = std::max(worst, frame_jacobian(f, interior(n, rng)).symplectic_residual());
    }
    return worst;
  });
  add("frame.jacobian_finite_difference", 20, 1e-6, [](Eigen::Index n, std::size_t cases, Rng& rng) {
    double worst = 0.0;
    for (std::size_t k = 0; k < cases; ++k) {
      const FrameChange f = frame_from_unitary(random_unitary(n, rng));
      const Preparation s = interior(n, rng);
      const RealMatrix m = frame_jacobian(f, s).m;
      const PhasePoint origin = s.point();
      const PhasePoint base = transform_point(f, origin);
      double smallest = 1.0;
      for (std::size_t i = 0; i < s.dim(); ++i) smallest = std::min({smallest, origin.p[i], base.p[i]});
      const double step = std::min(1e-4, 0.1 * smallest);
      for (std::size_t c = 0; c < 2 * s.dim(); ++c) {
        const auto column = richardson(origin, c, step, [&](const PhasePoint& z) {
          const PhasePoint img = transform_point(f, z);
          std::vector<double> out(img.p);
          for (std::size_t i = 0; i < img.dim(); ++i) out.push_back(base.phi[i] + wrap_phase(img.phi[i] - base.phi[i]));
          return out;
        });
        for (std::size_t r = 0; r < column.size(); ++r) {
          worst = std::max(worst, std::abs(column[r] - m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c))));
        }
      }
    }
    return worst;
  });

  // metric
  add("metric.positivity", 100, 1e-14, [](Eigen::Index n, std::size_t cases, Rng& rng) {
    double worst = 0.0;
    for (std::size_t k = 0; k < cases; ++k) {
      const Preparation s = interior(n, rng);
      const TangentDisplacement d = random_displacement(s, rng);
      worst = std::max(worst, std::max(0.0, -line_element2(s, d).total));
      const TangentDisplacement gauge{std::vector<double>(s.dim(), 0.0),
                                      std::vector<double>(s.dim(), uniform(rng, -5, 5))};
      worst = std::max(worst, std::abs(line_element2(s, gauge).total));
    }
    return worst;
  });
  add("metric.gauge_invariance", 100, 1e-14, [](Eigen::Index n, std::size_t cases, Rng& rng) {
    double worst = 0.0;
    for (std::size_t k = 0; k < cases; ++k) {
      const Preparation s = interior(n, rng);
      const TangentDisplacement d = random_displacement(s, rng);
      TangentDisplacement shifted = d;
      const double c = uniform(rng, -1, 1);
      for (double& v : shifted.dphi) v += c;
      worst = std::max(worst, std::abs(line_element2(s, d).total - line_element2(s, shifted).total));
    }
    return worst;
  });
  add("metric.polar_cartesian_consistency", 100, 1e-10, [](Eigen::Index n, std::size_t cases, Rng& rng) {
    double worst = 0.0;
    for (std::size_t k = 0; k < cases; ++k) {
      const Preparation s = interior(n, rng);
      const TangentDisplacement d = random_displacement(s, rng);
      const double polar = line_element2(s, d).total;
      const double cartesian = cartesian_line_element2(to_cartesian(s), push_forward(s, d));
      worst = std::max(worst, std::abs(polar - cartesian));
    }
    return worst;
  });
  // Residual is the shortfall of the fitted log-log slope below 3.
  add("metric.fubini_study_order", 20, 0.1, [](Eigen::Index n, std::size_t cases, Rng& rng) {
    double worst = 0.0;
    for (std::size_t k = 0; k < cases; ++k) {
      const Preparation s = interior(n, rng);
      const TangentDisplacement d = relative_displacement(s, rng);
      const double ds2 = line_element2(s, d).total;
      std::vector<double> xs, ys;
      for (double eps : {1e-2, 1e-3, 1e-4}) {
        const double angle = fubini_study_angle(s, displace(s, d, eps));
        xs.push_back(std::log(eps));
        ys.push_back(std::log(std::abs(angle * angle - eps * eps * ds2)));
      }
      const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / 3.0;
      const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / 3.0;
      double sxy = 0.0, sxx = 0.0;
      for (std::size_t i = 0; i < 3; ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
      }
      const double slope = sxy / sxx;
      worst = std::max(worst, std::isfinite(slope) ? std::max(0.0, 3.0 - slope) : 3.0);
    }
    return worst;
  });
  add("metric.frame_invariance", 50, 1e-6, [](Eigen::Index n, std::size_t cases, Rng& rng) {
    double worst = 0.0;
    for (std::size_t k = 0; k < cases; ++k) {
      const FrameChange f = frame_from_unitary(random_unitary(n, rng));
      const Preparation s = interior(n, rng);
      worst = std::max(worst, invariance_residual(f, s, random_displacement(s, rng), 1e-5));
    }
    return worst;
  });

  // dynamics
  add("dynamics.gradient_check", 100, 1e-6, [](Eigen::Index n, std::size_t cases, Rng& rng) {
    double worst = 0.0;
    for (std::size_t k = 0; k < cases; ++k) {
      const HermitianOperator h = random_hermitian(n, rng, 2.0);
      const Preparation s = interior(n, rng);
      const MeanValueGradient grad = mean_value_gradient(s.point(), h);
      for (std::size_t c = 0; c < 2 * s.dim(); ++c) {
        const double fd = richardson(s.point(), c, 1e-4, [&](const PhasePoint& z) {
          return std::vector<double>{mean_value(z, h)};
        })[0];
        const double exact = c < s.dim() ? grad.d_dp[c] : grad.d_dphi[c - s.dim()];
        worst = std::max(worst, std::abs(fd - exact) / std::max(1.0, std::abs(exact)));
      }
    }
    return worst;
  });
  add("dynamics.oracle_equivalence", 2, 1e-6, [](Eigen::Index n, std::size_t cases, Rng& rng) {
    double worst = 0.0;
    for (std::size_t k = 0; k < cases; ++k) {
      const HermitianOperator h = random_hermitian(n, rng, 2.0);
      const Preparation s = random_preparation(n, rng);
      const Trajectory traj = evolve(s, h, 5.0, 1e-3, {.record_every = 100000});
      worst = std::max(worst, prep_distance_check(traj.states.back(), oracle_evolve(h, s, 5.0)));
    }
    return worst;
  });
  add("dynamics.norm_conservation", 3, 1e-10, [](Eigen::Index n, std::size_t cases, Rng& rng) {
    double worst = 0.0;
    for (std::size_t k = 0; k < cases; ++k) {
      const Trajectory traj = evolve(random_preparation(n, rng), random_hermitian(n, rng, 2.0), 2.0, 1e-3);
      for (double norm : traj.norm) worst = std::max(worst, std::abs(norm - 1.0));
    }
    return worst;
  });
  add("dynamics.energy_conservation", 2, 1e-8, [](Eigen::Index n, std::size_t cases, Rng& rng) {
    double worst = 0.0;
    for (std::size_t k = 0; k < cases; ++k) {
      const Trajectory traj = evolve(random_preparation(n, rng), random_hermitian(n, rng, 2.0), 10.0, 1e-3);
      worst = std::max(worst, conserved_energy_drift(traj));
    }
    return worst;
  });
  add("dynamics.observable_rate", 10, 1e-5, [](Eigen::Index n, std::size_t cases, Rng& rng) {
    double worst = 0.0;
    constexpr double dt = 1e-3;
    for (std::size_t k = 0; k < cases; ++k) {
      const HermitianOperator h = random_hermitian(n, rng, 2.0);
      const HermitianOperator f = random_hermitian(n, rng, 2.0);
      const Trajectory traj = evolve(interior(n, rng), h, 0.05, dt);
      std::vector<double> values;
      for (const Preparation& st : traj.states) values.push_back(mean_value(st, f));
      for (std::size_t i = 2; i + 2 < values.size(); ++i) {
        const double rate =
            (values[i - 2] - 8.0 * values[i - 1] + 8.0 * values[i + 1] - values[i + 2]) / (12.0 * dt);
        worst = std::max(worst, std::abs(rate - poisson_bracket(f, h, traj.states[i])));
      }
    }
    return worst;
  });
  add("dynamics.frame_covariance", 3, 1e-6, [](Eigen::Index n, std::size_t cases, Rng& rng) {
    double worst = 0.0;
    for (std::size_t k = 0; k < cases; ++k) {
      const ComplexMatrix u = random_unitary(n, rng);
      const FrameChange f = frame_from_unitary(u);
      const HermitianOperator h = random_hermitian(n, rng, 2.0);
      const HermitianOperator h_frame(u.adjoint() * h.matrix() * u);
      const Preparation s = random_preparation(n, rng);
      const EvolveOptions sparse{.record_every = 100000};
      const Preparation a = apply_frame(f, evolve(s, h, 1.0, 1e-3, sparse).states.back());
      const Preparation b = evolve(apply_frame(f, s), h_frame, 1.0, 1e-3, sparse).states.back();
      worst = std::max(worst, prep_distance_check(a, b));
    }
    return worst;
  });
  add("dynamics.poisson_algebra", 100, 1e-11, [](Eigen::Index n, std::size_t cases, Rng& rng) {
    double worst = 0.0;
    for (std::size_t k = 0; k < cases; ++k) {
      const HermitianOperator f = random_hermitian(n, rng, 2.0);
      const HermitianOperator g = random_hermitian(n, rng, 2.0);
      const HermitianOperator h = random_hermitian(n, rng, 2.0);
      const Preparation s = interior(n, rng);
      const double a = uniform(rng, -2, 2);
      const double b = uniform(rng, -2, 2);
      const double antisymmetry = std::abs(poisson_bracket(f, g, s) + poisson_bracket(g, f, s));
      const double linearity = std::abs(poisson_bracket(a * f + b * g, h, s) - a * poisson_bracket(f, h, s) -
                                        b * poisson_bracket(g, h, s));
      worst = std::max({worst, antisymmetry, linearity});
    }
    return worst;
  });
  add("dynamics.poisson_commutator", 100, 1e-9, [](Eigen::Index n, std::size_t cases, Rng& rng) {
    double worst = 0.0;
    for (std::size_t k = 0; k < cases; ++k) {
      const HermitianOperator f = random_hermitian(n, rng, 2.0);
      const HermitianOperator g = random_hermitian(n, rng, 2.0);
      const Preparation s = interior(n, rng);
      const double oracle = hilbert::commutator_rate(f, g, hilbert::to_amplitudes(s));
      worst = std::max(worst, std::abs(poisson_bracket(f, g, s) - oracle));
    }
    return worst;
  });
  add("dynamics.flow_volume", 2, 1e-4, [](Eigen::Index n, std::size_t cases, Rng& rng) {
    double worst = 0.0;
    for (std::size_t k = 0; k < cases; ++k) {
      worst = std::max(worst, flow_volume_residual(random_hermitian(n, rng, 1.0), interior(n, rng), 1.0, 1e-5));
    }
    return worst;
  });

  // bloch2
  const auto random_point = [](Rng& rng) {
    return bloch::SpherePoint{uniform(rng, 0.05, kPi - 0.05), uniform(rng, -kPi, kPi)};
  };
  add("bloch.chart_round_trip", 100, 1e-12, [random_point](Eigen::Index, std::size_t cases, Rng& rng) {
    double worst = 0.0;
    for (std::size_t k = 0; k < cases; ++k) {
      const bloch::SpherePoint pt = random_point(rng);
      const bloch::SpherePoint back = bloch::to_sphere(bloch::from_sphere(pt));
      worst = std::max({worst, std::abs(back.theta - pt.theta), std::abs(wrap_phase(back.phi - pt.phi))});
    }
    return worst;
  }, true);
  add("bloch.sphere_metric", 100, 1e-10, [random_point](Eigen::Index, std::size_t cases, Rng& rng) {
    double worst = 0.0;
    for (std::size_t k = 0; k < cases; ++k) {
      const bloch::SpherePoint pt = random_point(rng);
      const double dtheta = uniform(rng, -1, 1);
      const double dphi = uniform(rng, -1, 1);
      const double sphere = bloch::sphere_line_element2(pt, dtheta, dphi);
      const double general =
          line_element2(bloch::from_sphere(pt), bloch::sphere_displacement(pt, dtheta, dphi)).total;
      worst = std::max(worst, std::abs(sphere - general));
    }
    return worst;
  }, true);
  add("bloch.cosine_law", 100, 1e-10, [random_point](Eigen::Index, std::size_t cases, Rng& rng) {
    double worst = 0.0;
    for (std::size_t k = 0; k < cases; ++k) {
      const bloch::SpherePoint pt = random_point(rng);
      const double alpha = uniform(rng, 0, kPi);
      const double beta = uniform(rng, -kPi, kPi);
      const Preparation image = apply_frame(bloch::rotation_frame(alpha, beta), bloch::from_sphere(pt));
      const double theta_frame = 2.0 * std::atan2(std::sqrt(image.p()[1]), std::sqrt(image.p()[0]));
      worst = std::max(worst, std::abs(bloch::cosine_law_theta(pt, alpha, beta) - theta_frame));
    }
    return worst;
  }, true);
  add("bloch.reduced_equations", 100, 1e-10, [random_point](Eigen::Index, std::size_t cases, Rng& rng) {
    double worst = 0.0;
    for (std::size_t k = 0; k < cases; ++k) {
      const bloch::SpherePoint pt = random_point(rng);
      const HermitianOperator h = random_hermitian(2, rng, 2.0);
      const bloch::ReducedRate reduced = bloch::reduced_rhs(pt, h);
      const TangentDisplacement full = hamilton_rhs(bloch::from_sphere(pt), h);
      worst = std::max({worst, std::abs(reduced.dp_dt - full.dp[0]),
                        std::abs(reduced.dphi_dt - (full.dphi[0] - full.dphi[1]))});
    }
    return worst;
  }, true);
  add("bloch.circular_orbit", 10, 1e-12, [random_point](Eigen::Index, std::size_t cases, Rng& rng) {
    double worst = 0.0;
    for (std::size_t k = 0; k < cases; ++k) {
      const bloch::SpherePoint pt = random_point(rng);
      const std::vector<double> energies{uniform(rng, -2, 2), uniform(rng, -2, 2)};
      const Trajectory traj = evolve(bloch::from_sphere(pt), HermitianOperator::diagonal(energies), 10.0, 1e-2);
      for (const Preparation& s : traj.states) worst = std::max(worst, std::abs(bloch::to_sphere(s).theta - pt.theta));
    }
    return worst;
  }, true);
  add("bloch.dynamics_reduction", 20, 1e-9, [random_point](Eigen::Index, std::size_t cases, Rng& rng) {
    double worst = 0.0;
    for (std::size_t k = 0; k < cases; ++k) {
      const bloch::SpherePoint pt = random_point(rng);
      const double e1 = uniform(rng, -2, 2);
      const double e2 = uniform(rng, -2, 2);
      const double t = uniform(rng, 0, 10);
      const std::vector<double> energies{e1, e2};
      const Trajectory traj = evolve(bloch::from_sphere(pt), HermitianOperator::diagonal(energies), t, 1e-2);
      const bloch::SpherePoint general = bloch::to_sphere(traj.states.back());
      const bloch::SpherePoint reduced = bloch::evolve_two_level(pt, e1, e2, t);
      worst = std::max({worst, std::abs(general.theta - reduced.theta), std::abs(wrap_phase(general.phi - reduced.phi))});
    }
    return worst;
  }, true);

  // hilbert_oracle
  add("hilbert.propagator_unitarity", 100, 1e-12, [](Eigen::Index n, std::size_t cases, Rng& rng) {
    double worst = 0.0;
    for (std::size_t k = 0; k < cases; ++k) {
      worst = std::max(worst, unitarity_residual(hilbert::propagator(random_hermitian(n, rng, 2.0), uniform(rng, -10, 10))));
    }
    return worst;
  });
  add("hilbert.group_property", 100, 1e-12, [](Eigen::Index n, std::size_t cases, Rng& rng) {
    double worst = 0.0;
    for (std::size_t k = 0; k < cases; ++k) {
      const HermitianOperator h = random_hermitian(n, rng, 2.0);
      const hilbert::AmplitudeVector v = hilbert::to_amplitudes(random_preparation(n, rng));
      const double t1 = uniform(rng, -5, 5);
      const double t2 = uniform(rng, -5, 5);
      const ComplexVector once = hilbert::propagate(h, v, t1 + t2).amplitudes();
      const ComplexVector twice = hilbert::propagate(h, hilbert::propagate(h, v, t1), t2).amplitudes();
      worst = std::max(worst, (once - twice).cwiseAbs().maxCoeff());
    }
    return worst;
  });
  add("hilbert.global_phase_invariance", 100, 1e-13, [](Eigen::Index n, std::size_t cases, Rng& rng) {
    double worst = 0.0;
    for (std::size_t k = 0; k < cases; ++k) {
      const HermitianOperator f = random_hermitian(n, rng, 2.0);
      const hilbert::AmplitudeVector v = hilbert::to_amplitudes(random_preparation(n, rng));
      const hilbert::AmplitudeVector rotated(std::polar(1.0, uniform(rng, -kPi, kPi)) * v.amplitudes());
      worst = std::max(worst, std::abs(hilbert::expectation(f, v) - hilbert::expectation(f, rotated)));
    }
    return worst;
  });

  std::sort(checks.begin(), checks.end(), [](const CheckEntry& a, const CheckEntry& b) { return a.name < b.name; });
  return checks;
}

}  // namespace

std::vector<std::string> verification_checks() {
  std::vector<std::string> names;
  for (const CheckEntry& c : registry()) names.push_back(c.name);
  return names;
}

std::vector<CheckResult> run_verification(const VerifyOptions& options) {
  const std::vector<CheckEntry> checks = registry();
  struct Job {
    const CheckEntry* entry;
    int n;
    std::uint64_t seed;
  };
  // Per-job seeds, drawn in registry order from one generator.
  Rng master(options.seed);
  std::vector<Job> jobs;
  const int max_dim = std::max(2, options.max_dim);
  for (const CheckEntry& entry : checks) {
    const int top = entry.two_level_only ? 2 : max_dim;
    for (int n = 2; n <= top; ++n) jobs.push_back({&entry, n, master()});
  }

  const auto execute = [&options](const Job& job) {
    CheckResult r;
    r.check = job.entry->name;
    r.n = job.n;
    r.cases = job.entry->cases;
    r.tolerance = options.tolerance.value_or(job.entry->tolerance);
    try {
      Rng rng(job.seed);
      r.max_residual = job.entry->run(job.n, job.entry->cases, rng);
    } catch (const std::exception&) {
      r.max_residual = std::numeric_limits<double>::infinity();
    }
    r.pass = r.max_residual <= r.tolerance;
    return r;
  };

  std::vector<CheckResult> results;
  if (options.parallel) {
    std::vector<std::future<CheckResult>> pending;
    for (const Job& job : jobs) pending.push_back(std::async(std::launch::async, execute, job));
    for (auto& f : pending) results.push_back(f.get());
  } else {
    for (const Job& job : jobs) results.push_back(execute(job));
  }
  std::sort(results.begin(), results.end(), [](const CheckResult& a, const CheckResult& b) {
    return a.check != b.check ? a.check < b.check : a.n < b.n;
  });
  return results;
}

nlohmann::json verification_report(const std::vector<CheckResult>& results) {
  nlohmann::json checks = nlohmann::json::array();
  bool all = true;
  for (const CheckResult& r : results) {
    // A check that threw reports null.
    nlohmann::json residual = std::isfinite(r.max_residual) ? nlohmann::json(r.max_residual) : nlohmann::json();
    checks.push_back({{"check", r.check},
                      {"n", r.n},
                      {"cases", r.cases},
                      {"max_residual", residual},
                      {"tolerance", r.tolerance},
                      {"pass", r.pass}});
    all = all && r.pass;
  }
  return {{"pass", all}, {"checks", checks}};
}

}  // namespace prepspace
