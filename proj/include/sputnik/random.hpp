#pragma once

#include <cstdint>
#include <random>

namespace sputnik {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer; derives independent seeds for sub-streams.
constexpr std::uint64_t mix_seed(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline Rng make_stream(std::uint64_t seed, std::uint64_t stream) {
    return Rng{mix_seed(seed ^ mix_seed(stream))};
}

inline bool coin(Rng& rng, double p) {
    if (p <= 0.0) return false;
    if (p >= 1.0) return true;
    return std::uniform_real_distribution<double>{0.0, 1.0}(rng) < p;
}

inline std::size_t pick_index(Rng& rng, std::size_t n) {
    return std::uniform_int_distribution<std::size_t>{0, n - 1}(rng);
}

} // namespace sputnik
