#include "tbtlrr/noise.hpp"

#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace tbtlrr {

Tensor3 add_sparse_noise(const Tensor3& x, double fraction, std::uint64_t seed) {
    if (fraction < 0.0 || fraction > 1.0) {
        throw std::invalid_argument("add_sparse_noise: fraction must lie in [0, 1]");
    }
    Tensor3 out = x;
    const std::size_t total = x.size();
    const std::size_t count = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(total)));
    if (count == 0) return out;

    std::mt19937_64 rng(seed);
    std::vector<std::size_t> indices(total);
    std::iota(indices.begin(), indices.end(), std::size_t{0});
    // Partial Fisher-Yates: the first `count` entries end up as a uniform
    // sample without replacement.
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t j = i + std::uniform_int_distribution<std::size_t>(0, total - 1 - i)(rng);
        std::swap(indices[i], indices[j]);
    }
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (std::size_t i = 0; i < count; ++i) {
        out.data()[indices[i]] = unit(rng);
    }
    return out;
}

Tensor3 add_gaussian_noise(const Tensor3& x, double level, std::uint64_t seed) {
    if (level < 0.0) {
        throw std::invalid_argument("add_gaussian_noise: level must be nonnegative");
    }
    Tensor3 out = x;
    if (level == 0.0) return out;

    const double sigma = level * x.frobenius_norm() / std::sqrt(static_cast<double>(x.size()));
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, sigma);
    for (double& v : out.data()) {
        v += gauss(rng);
    }
    return out;
}

}  // namespace tbtlrr
