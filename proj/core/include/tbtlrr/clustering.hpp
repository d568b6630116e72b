#pragma once

#include <cstdint>
#include <vector>

#include "tbtlrr/affinity.hpp"

namespace tbtlrr {

/// Labels from every k-means restart on the spectral embedding; `labels`
/// holds the restart with the lowest distortion. Labels are 1-based.
struct SpectralOutcome {
    std::vector<int> labels;
    int best_restart = -1;
    double best_distortion = 0.0;
    std::vector<std::vector<int>> restart_labels;
};

/// Normalized spectral clustering: symmetric normalized operator
/// D^(-1/2) W D^(-1/2) (degrees guarded by 1e-12), eigenvectors of the k
/// largest eigenvalues, unit row normalization, then k-means (k-means++
/// init, at most 300 Lloyd iterations, stop when assignments stabilize)
/// once per restart. Per-restart RNG streams are derived from
/// (seed, restart index), so results do not depend on evaluation order.
SpectralOutcome spectral_clustering(const AffinityMatrix& w, int k, int restarts, std::uint64_t seed);

/// Labels plus ACC/NMI of the best restart and mean/std statistics over
/// all restarts.
struct ClusterResult {
    std::vector<int> labels;
    double acc = 0.0;
    double nmi = 0.0;
    double acc_mean = 0.0, acc_std = 0.0;
    double nmi_mean = 0.0, nmi_std = 0.0;
};

ClusterResult evaluate_clustering(const SpectralOutcome& outcome, const std::vector<int>& truth);

}  // namespace tbtlrr
