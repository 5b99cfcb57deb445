#pragma once

#include <cstdint>

namespace wavekin {

// SplitMix64 (Steele/Lea/Flood mixing constants). Chosen as the artifact's
// fixed, documented PRNG: identical streams on every platform, unlike the
// standard-library distributions.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform double in [0, 1), 53-bit resolution.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
};

}  // namespace wavekin
