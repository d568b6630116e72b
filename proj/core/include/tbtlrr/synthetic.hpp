#pragma once

#include <cstdint>
#include <vector>

#include "tbtlrr/tensor.hpp"

namespace tbtlrr {

/// Parameters for the synthetic union-of-subspaces generator.
struct SyntheticParams {
    int k_subspaces = 4;
    int samples_per_cluster = 20;
    int n1 = 30;
    int n3 = 4;
    int tubal_rank = 3;
    double sparse_fraction = 0.0;
    double gaussian_level = 0.0;
    std::uint64_t seed = 0;

    void validate() const;
};

struct SyntheticData {
    Tensor3 x;                // noisy observation, values in [0, 1] pre-noise
    std::vector<int> labels;  // 1-based subspace membership, length k*m
    Tensor3 clean;            // normalized tensor before noise injection
};

/// Draws, for each subspace, an orthonormal basis shared by all
/// transform-domain slices of a hidden random orthogonal mixing transform,
/// and i.i.d. normal coefficients whose per-slice scale decays
/// geometrically, so the data has low tubal rank and its mode-3 energy
/// concentrates under a learned transform. The basis of every subspace
/// contains the constant direction, which keeps the tubal rank at most
/// `tubal_rank` after the affine [0, 1] normalization. Sparse and Gaussian
/// noise are applied after normalization. Deterministic under seed.
SyntheticData generate_synthetic(const SyntheticParams& p);

}  // namespace tbtlrr
