#pragma once

#include <cstdint>
#include <random>

#include "vnd/algebra.hpp"

namespace vnd {

using Rng = std::mt19937_64;

// Entries i.i.d. complex Gaussian, E|z|^2 = 1.
ComplexMatrix ginibre(Index rows, Index cols, Rng& rng);
ComplexMatrix haar_unitary(Index d, Rng& rng);
// rows x cols matrix with orthonormal columns (rows >= cols).
ComplexMatrix haar_isometry(Index rows, Index cols, Rng& rng);

ComplexVector random_pure_vector(Index d, Rng& rng);
// Wishart G G*/Tr with G of size d x rank.
State random_mixed_state(Index d, Rng& rng, Index rank = -1);
State random_pure_state(Index d, Rng& rng);
// Diagonal state with Dirichlet(1,...,1) spectrum.
State random_diagonal_state(Index d, Rng& rng);

}  // namespace vnd
