#include <doctest.h>

#include <cmath>
#include <numbers>

#include "prepspace/errors.hpp"
#include "prepspace/frame.hpp"
#include "prepspace/sampling.hpp"
#include "support.hpp"

using namespace prepspace;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

FrameChange hadamard() {
  FrameChange f;
  f.w = RealMatrix::Constant(2, 2, 0.5);
  f.beta = RealMatrix::Zero(2, 2);
  f.beta(1, 1) = kPi;
  return f;
}

ComplexMatrix hadamard_matrix() {
  ComplexMatrix u(2, 2);
  u << 1.0, 1.0, 1.0, -1.0;
  return u / std::sqrt(2.0);
}

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

}  // namespace

TEST_SUITE("frame") {

TEST_CASE("frame_from_unitary") {
  FrameChange f = frame_from_unitary(ComplexMatrix::Identity(3, 3));
  CHECK(f.w == RealMatrix::Identity(3, 3));
  CHECK(f.beta == RealMatrix::Zero(3, 3));

  f = frame_from_unitary(hadamard_matrix());
  CHECK(oracle::max_abs(f.w - RealMatrix::Constant(2, 2, 0.5)) <= 1e-15);
  CHECK(f.beta(0, 0) == 0.0);
  CHECK(f.beta(0, 1) == 0.0);
  CHECK(f.beta(1, 0) == 0.0);
  CHECK(f.beta(1, 1) == Approx(kPi));

  Rng rng(3);
  CHECK(validate_frame(frame_from_unitary(random_unitary(3, rng))).valid());

  ComplexMatrix bad = ComplexMatrix::Identity(2, 2);
  bad(0, 1) = 0.1;
  CHECK(code_of([&] { frame_from_unitary(bad); }) == ErrorCode::NotUnitary);
  CHECK(code_of([] { frame_from_unitary(ComplexMatrix::Identity(2, 3)); }) == ErrorCode::NotUnitary);
}

TEST_CASE("unitary_from_frame inverts frame_from_unitary") {
  Rng rng(5);
  for (int k = 0; k < 20; ++k) {
    const ComplexMatrix u = random_unitary(2 + k % 4, rng);
    CHECK((unitary_from_frame(frame_from_unitary(u)) - u).cwiseAbs().maxCoeff() <= 1e-14);
  }
}

TEST_CASE("validate_frame") {
  CHECK(validate_frame(frame_from_unitary(ComplexMatrix::Identity(2, 2))).max() == 0.0);
  CHECK(validate_frame(hadamard()).max() <= 1e-15);

  FrameChange bistochastic = hadamard();
  bistochastic.beta.setZero();
  const FrameResidual r = validate_frame(bistochastic);
  CHECK(r.stochastic == 0.0);
  CHECK(r.orthogonality == Approx(1.0));
  CHECK_FALSE(r.valid());

  FrameChange ragged;
  ragged.w = RealMatrix::Identity(2, 3);
  ragged.beta = RealMatrix::Zero(2, 2);
  CHECK(std::isinf(validate_frame(ragged).max()));
}

TEST_CASE("apply_frame") {
  Rng rng(8);
  const Preparation s = random_preparation(3, rng);
  CHECK(prep_distance_check(apply_frame(frame_from_unitary(ComplexMatrix::Identity(3, 3)), s), s) <= 1e-15);

  const Preparation ket0({1.0, 0.0}, {0.0, 0.0});
  const Preparation once = apply_frame(hadamard(), ket0);
  CHECK(once.p()[0] == Approx(0.5));
  CHECK(once.p()[1] == Approx(0.5));
  CHECK(std::abs(once.phi()[0]) <= 1e-15);
  CHECK(std::abs(once.phi()[1]) <= 1e-15);

  const Preparation twice = apply_frame(hadamard(), once);
  CHECK(twice.p()[0] == Approx(1.0));
  CHECK(twice.p()[1] <= 1e-15);
  CHECK(prep_distance_check(twice, oracle::preparation(oracle::frame_image(
                                       hadamard_matrix(), oracle::frame_image(hadamard_matrix(), oracle::amplitudes(ket0))))) <=
        1e-15);

  CHECK(code_of([&] { apply_frame(hadamard(), s); }) == ErrorCode::DimensionMismatch);
  FrameChange broken = hadamard();
  broken.beta.setZero();
  CHECK(code_of([&] { apply_frame(broken, ket0); }) == ErrorCode::InvalidFrame);
}

TEST_CASE("probability_split") {
  ProbabilitySplit split = probability_split(hadamard(), Preparation({1.0, 0.0}, {0.0, 0.0}));
  CHECK(split.interference == std::vector<double>{0.0, 0.0});

  split = probability_split(hadamard(), Preparation({0.5, 0.5}, {0.0, 0.0}));
  CHECK(split.transformed[0] == Approx(1.0));
  CHECK(std::abs(split.transformed[1]) <= 1e-15);
  CHECK(split.classical[0] == Approx(0.5));
  CHECK(split.classical[1] == Approx(0.5));
  CHECK(split.interference[0] == Approx(0.5));
  CHECK(split.interference[1] == Approx(-0.5));

  split = probability_split(hadamard(), Preparation({0.5, 0.5}, {0.0, kPi / 2}));
  CHECK(split.classical[0] == Approx(0.5));
  CHECK(split.classical[1] == Approx(0.5));
  CHECK(std::abs(split.interference[0] + split.interference[1]) <= 1e-15);

  Rng rng(21);
  for (int k = 0; k < 200; ++k) {
    const Eigen::Index n = 2 + k % 5;
    const Preparation s = random_preparation(n, rng);
    const ComplexMatrix u = random_unitary(n, rng);
    const ProbabilitySplit r = probability_split(frame_from_unitary(u), s);
    const Preparation expected = oracle::preparation(oracle::frame_image(u, oracle::amplitudes(s)));
    double total = 0.0;
    for (std::size_t i = 0; i < s.dim(); ++i) {
      total += r.interference[i];
      CHECK(std::abs(r.transformed[i] - expected.p()[i]) <= 1e-12);
      CHECK(std::abs(r.classical[i] + r.interference[i] - r.transformed[i]) <= 1e-15);
    }
    CHECK(std::abs(total) <= 1e-12);
  }
}

TEST_CASE("real pair form") {
  RealPairTransform t = to_real_pair(frame_from_unitary(ComplexMatrix::Identity(2, 2)));
  CHECK(t.a == RealMatrix::Identity(2, 2));
  CHECK(t.b == RealMatrix::Zero(2, 2));
  CHECK(real_pair_validate(t) == 0.0);

  t = to_real_pair(hadamard());
  RealMatrix expected(2, 2);
  expected << 1.0, 1.0, 1.0, -1.0;
  CHECK(oracle::max_abs(t.a - expected / std::sqrt(2.0)) <= 1e-15);
  CHECK(oracle::max_abs(t.b) <= 1e-15);
  CHECK(real_pair_validate(t) <= 1e-15);

  Rng rng(4);
  const RealPairTransform r = to_real_pair(frame_from_unitary(random_unitary(4, rng)));
  CHECK(real_pair_validate(r) <= 1e-12);

  CHECK(detail::general_linear_residual(r.a, r.b, -r.b, r.a) <= 1e-12);
  CHECK(detail::general_linear_residual(r.a, r.b, r.b, r.a) > 1e-3);
}

TEST_CASE("frame_jacobian") {
  const Preparation s({0.3, 0.7}, {0.0, 1.0});
  const SymplecticMatrices id = frame_jacobian(frame_from_unitary(ComplexMatrix::Identity(2, 2)), s);
  CHECK(id.m == RealMatrix::Identity(4, 4));
  CHECK(id.symplectic_residual() == 0.0);

  const SymplecticMatrices h = frame_jacobian(hadamard(), s);
  CHECK(h.symplectic_residual() <= 1e-8);
  CHECK(oracle::max_abs(h.m - oracle::jacobian(hadamard(), s)) <= 1e-6);

  Rng rng(77);
  for (int k = 0; k < 30; ++k) {
    const FrameChange f = frame_from_unitary(random_unitary(3, rng));
    const Preparation x = random_interior_preparation(3, rng, 0.03);
    const SymplecticMatrices j = frame_jacobian(f, x);
    CHECK(j.symplectic_residual() <= 1e-8);
    CHECK(oracle::max_abs(j.m - oracle::jacobian(f, x)) <= 1e-6);
  }

  CHECK(code_of([&] { frame_jacobian(hadamard(), Preparation({1.0, 0.0}, {0.0, 0.0})); }) ==
        ErrorCode::BoundaryState);
  // An interior state whose image touches the boundary.
  CHECK(code_of([&] { frame_jacobian(hadamard(), Preparation({0.5, 0.5}, {0.0, 0.0})); }) ==
        ErrorCode::BoundaryState);
}

TEST_CASE("random_frame") {
  CHECK(validate_frame(random_frame(2, 1)).max() <= 1e-10);
  const FrameChange f = random_frame(5, 7);
  for (Eigen::Index i = 0; i < 5; ++i) {
    CHECK(std::abs(f.w.row(i).sum() - 1.0) <= 1e-12);
    CHECK(std::abs(f.w.col(i).sum() - 1.0) <= 1e-12);
  }
  const FrameChange again = random_frame(5, 7);
  CHECK(again.w == f.w);
  CHECK(again.beta == f.beta);
  CHECK(random_frame(5, 8).w != f.w);
}

TEST_CASE("oracle equivalence and composition") {
  Rng rng(99);
  for (int k = 0; k < 200; ++k) {
    const Eigen::Index n = 2 + k % 7;
    const ComplexMatrix u1 = random_unitary(n, rng);
    const ComplexMatrix u2 = random_unitary(n, rng);
    const Preparation s = random_preparation(n, rng);
    const Preparation expected = oracle::preparation(oracle::frame_image(u1, oracle::amplitudes(s)));
    const Preparation got = apply_frame(frame_from_unitary(u1), s);
    CHECK(prep_distance_check(got, expected) <= 1e-9);
    const Preparation composed = apply_frame(frame_from_unitary(u1 * u2), s);
    CHECK(prep_distance_check(apply_frame(frame_from_unitary(u2), got), composed) <= 1e-9);
  }
}

}  // TEST_SUITE
