#pragma once

#include <cstdint>

#include "tbtlrr/tensor.hpp"

namespace tbtlrr {

/// Replaces floor(fraction * n1*n2*n3) uniformly chosen distinct entries
/// with independent uniform [0, 1] draws. Deterministic under seed.
Tensor3 add_sparse_noise(const Tensor3& x, double fraction, std::uint64_t seed);

/// Adds i.i.d. zero-mean Gaussian noise with standard deviation
/// level * ||x||_F / sqrt(n1*n2*n3). Deterministic under seed.
Tensor3 add_gaussian_noise(const Tensor3& x, double level, std::uint64_t seed);

}  // namespace tbtlrr
