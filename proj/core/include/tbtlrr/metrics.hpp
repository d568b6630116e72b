#pragma once

#include <vector>

namespace tbtlrr {

/// Clustering accuracy: the best match between predicted and true labels
/// over all label permutations, found by optimal assignment on the
/// confusion matrix. Labels may be arbitrary integers; lengths must match
/// and be nonzero.
double acc(const std::vector<int>& pred, const std::vector<int>& truth);

/// Normalized mutual information I(pred, truth) / max(H(pred), H(truth))
/// with natural-log entropies. Both partitions trivial (single cluster,
/// zero entropy) is defined as 1.
double nmi(const std::vector<int>& pred, const std::vector<int>& truth);

}  // namespace tbtlrr
