#pragma once

#include <Eigen/Dense>

#include <vector>

#include "tbtlrr/tensor.hpp"

namespace tbtlrr {

/// Symmetric nonnegative sample-similarity matrix fed to spectral
/// clustering. Construction validates symmetry (1e-12), nonnegativity
/// and finiteness.
struct AffinityMatrix {
    Eigen::MatrixXd w;

    explicit AffinityMatrix(Eigen::MatrixXd w_in);

    int size() const { return static_cast<int>(w.rows()); }

    /// The matrix as an n2 x n2 x 1 tensor, for T3B export.
    Tensor3 to_tensor() const;
};

/// Plain fusion: (1/(2*n3)) * sum_i (|Z_i| + |Z_i'|).
AffinityMatrix affinity_average(const Tensor3& z);

/// Per-slice diagonal-energy ratios and their normalization to weights.
/// When every ratio vanishes (all-zero tensor) the weights fall back to
/// uniform and `degenerate` is set.
struct SliceWeights {
    std::vector<double> r;
    std::vector<double> w;
    double eps_guard = 0.0;
    bool degenerate = false;
};

SliceWeights diag_ratio_weights(const Tensor3& z, double eps_guard = 1e-10);

/// Weighted fusion sum_i w_i * (|Z_i| + |Z_i'|)/2. Absolute value and
/// symmetrization are applied per slice so the result is a valid affinity.
AffinityMatrix affinity_weighted(const Tensor3& z, const SliceWeights& weights);

}  // namespace tbtlrr
