#pragma once

#include <cstdint>

namespace tbtlrr::detail {

/// splitmix64 finalizer; used to derive independent RNG streams from a
/// base seed plus a stream index.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    return splitmix64(splitmix64(seed) ^ (stream + 1));
}

}  // namespace tbtlrr::detail
