#include <doctest.h>

#include <cmath>
#include <numbers>

#include "prepspace/errors.hpp"
#include "prepspace/frame.hpp"
#include "prepspace/metric.hpp"
#include "prepspace/sampling.hpp"
#include "support.hpp"

using namespace prepspace;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

template <typename Fn>
ErrorCode code_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected prepspace::Error");
  return ErrorCode::InvalidArgument;
}

FrameChange hadamard() {
  ComplexMatrix u(2, 2);
  u << 1.0, 1.0, 1.0, -1.0;
  return frame_from_unitary(u / std::sqrt(2.0));
}

}  // namespace

TEST_SUITE("metric") {

TEST_CASE("statistical_distance2") {
  const std::vector<double> even{0.5, 0.5};
  CHECK(statistical_distance2(even, std::vector<double>{0.01, -0.01}) == Approx(1e-4).epsilon(1e-13));
  CHECK(statistical_distance2(even, std::vector<double>{0.0, 0.0}) == 0.0);
  CHECK(statistical_distance2(std::vector<double>{0.25, 0.75}, std::vector<double>{0.01, -0.01}) ==
        Approx(1.3333333333333333e-4).epsilon(1e-13));
  CHECK(code_of([] {
          statistical_distance2(std::vector<double>{1.0, 0.0}, std::vector<double>{-0.01, 0.01});
        }) == ErrorCode::BoundaryState);
}

TEST_CASE("phase_variance2") {
  const std::vector<double> even{0.5, 0.5};
  CHECK(phase_variance2(std::vector<double>{0.2, 0.3, 0.5}, std::vector<double>{0.7, 0.7, 0.7}) <= 1e-16);
  const double delta = 0.02;
  CHECK(phase_variance2(even, std::vector<double>{delta, 0.0}) == Approx(delta * delta / 4).epsilon(1e-13));
  CHECK(phase_variance2(std::vector<double>{1.0, 0.0}, std::vector<double>{0.3, -2.0}) == 0.0);
}

TEST_CASE("line_element2") {
  const Preparation s({0.5, 0.5}, {0.0, 0.0});
  const LineElementBreakdown zero = line_element2(s, {{0.0, 0.0}, {0.0, 0.0}});
  CHECK(zero.total == 0.0);
  const LineElementBreakdown ds2 = line_element2(s, {{0.01, -0.01}, {0.02, 0.0}});
  CHECK(ds2.classical_part == Approx(1e-4).epsilon(1e-13));
  CHECK(ds2.variance_part == Approx(1e-4).epsilon(1e-13));
  CHECK(ds2.total == Approx(2e-4).epsilon(1e-13));
  CHECK(code_of([] {
          line_element2(Preparation({1.0, 0.0}, {0.0, 0.0}), {{-0.1, 0.1}, {0.0, 0.0}});
        }) == ErrorCode::BoundaryState);
}

TEST_CASE("line element equals the ray angle to second order") {
  Rng rng(31);
  for (int k = 0; k < 40; ++k) {
    const Eigen::Index n = 2 + k % 4;
    const Preparation s = random_interior_preparation(n, rng, 0.1 / static_cast<double>(n));
    const TangentDisplacement d = random_displacement(s, rng);
    const double ds2 = line_element2(s, d).total;
    const auto ratio = [&](double eps) {
      const double angle = oracle::ray_angle(oracle::amplitudes(s), oracle::amplitudes(displace(s, d, eps)));
      return angle * angle / (eps * eps);
    };
    const double eps = 1e-4;
    const double extrapolated = 2.0 * ratio(0.5 * eps) - ratio(eps);
    CHECK(std::abs(extrapolated - ds2) <= 1e-5 * std::max(1.0, ds2));
  }
}

TEST_CASE("fubini_study_angle") {
  const Preparation a({0.3, 0.7}, {0.1, 0.4});
  CHECK(fubini_study_angle(a, a) <= 1e-15);
  CHECK(fubini_study_angle(a, shift_all_phases(a, 1.3)) <= 1e-15);
  CHECK(fubini_study_angle(Preparation({1.0, 0.0}, {0.0, 0.0}), Preparation({0.0, 1.0}, {0.0, 0.0})) ==
        Approx(kPi / 2));
  CHECK(fubini_study_angle(Preparation({0.5, 0.5}, {0.0, 0.0}), Preparation({0.5, 0.5}, {0.0, kPi})) ==
        Approx(kPi / 2));
  CHECK(code_of([&] { fubini_study_angle(a, Preparation({1.0, 0.0, 0.0}, {0.0, 0.0, 0.0})); }) ==
        ErrorCode::DimensionMismatch);

  Rng rng(6);
  for (int k = 0; k < 100; ++k) {
    const Eigen::Index n = 2 + k % 6;
    const Preparation x = random_preparation(n, rng);
    const Preparation y = random_preparation(n, rng);
    CHECK(fubini_study_angle(x, y) ==
          Approx(oracle::ray_angle(oracle::amplitudes(x), oracle::amplitudes(y))).epsilon(1e-12));
  }
}

TEST_CASE("polar and Cartesian charts agree") {
  Rng rng(12);
  for (int k = 0; k < 100; ++k) {
    const Eigen::Index n = 2 + k % 5;
    const Preparation s = random_interior_preparation(n, rng, 0.1 / static_cast<double>(n));
    const TangentDisplacement d = random_displacement(s, rng);
    CHECK(std::abs(line_element2(s, d).total - cartesian_line_element2(to_cartesian(s), push_forward(s, d))) <=
          1e-10);
  }
}

TEST_CASE("positivity and gauge invariance") {
  Rng rng(13);
  std::uniform_real_distribution<double> shift(-3.0, 3.0);
  for (int k = 0; k < 200; ++k) {
    const Eigen::Index n = 2 + k % 5;
    const Preparation s = random_interior_preparation(n, rng, 0.1 / static_cast<double>(n));
    const TangentDisplacement d = random_displacement(s, rng);
    const double ds2 = line_element2(s, d).total;
    CHECK(ds2 > 0.0);
    TangentDisplacement shifted = d;
    const double c = shift(rng);
    for (double& v : shifted.dphi) v += c;
    CHECK(std::abs(line_element2(s, shifted).total - ds2) <= 1e-14);
  }
}

TEST_CASE("invariance_residual") {
  const Preparation s({0.3, 0.7}, {0.0, 1.0});
  const TangentDisplacement d{{0.2, -0.2}, {0.5, -0.1}};
  CHECK(invariance_residual(frame_from_unitary(ComplexMatrix::Identity(2, 2)), s, d, 0.1) <= 1e-12);
  CHECK(invariance_residual(hadamard(), s, d, 1e-5) <= 1e-6);

  Rng rng(14);
  for (int k = 0; k < 20; ++k) {
    const FrameChange f = frame_from_unitary(random_unitary(3, rng));
    const Preparation x = random_interior_preparation(3, rng, 0.03);
    CHECK(invariance_residual(f, x, random_displacement(x, rng), 1e-5) <= 1e-6);
  }
  CHECK(code_of([&] { invariance_residual(hadamard(), s, d, 0.0); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] {
          invariance_residual(hadamard(), Preparation({1.0, 0.0}, {0.0, 0.0}), {{-0.1, 0.1}, {0.0, 0.0}}, 1e-5);
        }) == ErrorCode::BoundaryState);
}

}  // TEST_SUITE
