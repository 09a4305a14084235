#pragma once

#include <cstdint>
#include <random>

namespace twistkit {

// std::mt19937_64 output is fully specified by the standard; the
// distributions are not, so sampling goes through these helpers to keep
// seeded runs identical across standard libraries.
using Rng = std::mt19937_64;

inline std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
    if (n <= 1) return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % n;
}

inline std::int64_t uniform_int(Rng& rng, std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(uniform_below(rng, static_cast<std::uint64_t>(hi - lo + 1)));
}

inline bool coin(Rng& rng) { return (rng() >> 63) != 0; }

}  // namespace twistkit
