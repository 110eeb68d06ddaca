#pragma once

#include <random>

#include "prepspace/hermitian.hpp"
#include "prepspace/preparation.hpp"

namespace prepspace {

using Rng = std::mt19937_64;

/// Haar unitary: QR of a complex Ginibre matrix with the phases of R's
/// diagonal folded back into Q.
ComplexMatrix random_unitary(Eigen::Index n, Rng& rng);

/// Haar-random pure state (uniform on the unit sphere in C^n).
Preparation random_preparation(Eigen::Index n, Rng& rng);

/// Rejection-samples random_preparation until every p_i >= min_probability.
Preparation random_interior_preparation(Eigen::Index n, Rng& rng, double min_probability);

/// GUE sample rescaled to the given spectral norm.
HermitianOperator random_hermitian(Eigen::Index n, Rng& rng, double spectral_norm);

/// Gaussian displacement with sum dp = 0, scaled so max |component| is 1.
TangentDisplacement random_displacement(const Preparation& s, Rng& rng);

}  // namespace prepspace
