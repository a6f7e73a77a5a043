#pragma once

// Seeded generators for random test instances. Identical seeds give identical draws.

#include <random>

#include "memchan/environments.hpp"
#include "memchan/numerics.hpp"

namespace memchan {

using Rng = std::mt19937_64;

ComplexVector random_complex_vector(Rng& rng, Index dim);
StateVector random_pure_state(Rng& rng, Index dim);

/// Ginibre-distributed mixed state of full rank (almost surely).
DensityMatrix random_density(Rng& rng, Index dim);

/// Haar-ish unitary from the QR decomposition of a complex Gaussian matrix.
ComplexMatrix random_unitary(Rng& rng, Index dim);

/// Q_i = u_i w_i^T with Gaussian complex vectors; resampled until both traces are away from zero.
Rank1MpsEnv random_rank1_env(Rng& rng);

/// Random point of the probability simplex of the given size.
std::vector<double> random_simplex(Rng& rng, std::size_t size);

}  // namespace memchan
