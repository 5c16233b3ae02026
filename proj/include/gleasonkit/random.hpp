#pragma once

#include <cstdint>
#include <random>

#include "gleasonkit/opcore.hpp"
#include "gleasonkit/states.hpp"

namespace gleasonkit {

using Rng = std::mt19937_64;

/// Independent generator for stream `stream` of a run seeded with `seed`.
Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0);

ComplexMatrix ginibre(Index rows, Index cols, Rng& rng);
/// Haar-distributed unitary via QR of a complex Gaussian with phase fix.
ComplexMatrix haar_unitary(Index d, Rng& rng);
ComplexVector haar_vector(Index d, Rng& rng);
/// Hilbert-Schmidt-type random density operator G G^dagger / tr, G of shape d x rank.
DensityOperator random_density(Index d, Rng& rng, Index rank = 0);
HermitianOperator random_hermitian(Index d, Rng& rng);

}  // namespace gleasonkit
