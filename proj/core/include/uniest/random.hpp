// Copyright 2026 The uniest Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <random>

#include "uniest/types.hpp"

namespace uniest {

using Rng = std::mt19937_64;

/// Deterministic child seed for stream \p stream of a parent seed (splitmix64).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// Matrix of i.i.d. standard complex Gaussians (E|z|^2 = 1).
CMatrix complex_gaussian(Index rows, Index cols, Rng& rng);

/// Haar-distributed unitary via QR of a Ginibre matrix with phase correction.
CMatrix haar_unitary(Index d, Rng& rng);

CVector random_unit_vector(Index d, Rng& rng);

}  // namespace uniest
