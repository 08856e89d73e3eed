#pragma once

#include <cstdint>
#include <random>

namespace pdsearch::detail {

/// Unbiased uniform draw from [0, bound) by rejection. bound must be nonzero.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t threshold = (-bound) % bound;  // 2^64 mod bound
    for (;;) {
        const std::uint64_t raw = rng();
        if (raw >= threshold) {
            return raw % bound;
        }
    }
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace pdsearch::detail
