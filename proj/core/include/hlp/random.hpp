#pragma once

// Seeded generators for random algebra elements. Everything here is
// deterministic given the seed so reports and tests are reproducible.

#include <cstdint>
#include <random>

#include "hlp/matcore.hpp"

namespace hlp {

using Rng = std::mt19937_64;

/// Independent child seed: splitmix64 of (seed, stream).
std::uint64_t split_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

/// Entries with independent standard complex Gaussian real and imaginary parts.
Matrix random_gaussian(Rng& rng, int rows, int cols);
BlockMatrix random_element(Rng& rng, const BlockProfile& profile);
BlockMatrix random_hermitian(Rng& rng, const BlockProfile& profile);
/// Haar-distributed unitary (QR of a Gaussian matrix with phase fix).
Matrix random_unitary(Rng& rng, int n);
BlockMatrix random_unitary(Rng& rng, const BlockProfile& profile);
/// Positive definite density with eigenvalues drawn from [min_eig, 1] in a
/// random eigenbasis, normalized to unit trace when `state` is set.
BlockMatrix random_density(Rng& rng, const BlockProfile& profile, double min_eig = 0.05, bool state = true);

}  // namespace hlp
