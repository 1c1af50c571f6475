#pragma once

#include <cstdint>

namespace hsc {

// Binomial coefficient as a double; exact for the sizes used here
// (results stay far below 2^53 at desk scale).
inline double binom(std::int64_t n, std::int64_t r) {
    if (r < 0 || n < 0 || r > n) return 0.0;
    if (r > n - r) r = n - r;
    double acc = 1.0;
    for (std::int64_t i = 1; i <= r; ++i) {
        acc *= static_cast<double>(n - r + i);
        acc /= static_cast<double>(i);
    }
    return acc;
}

inline std::uint64_t binom_u64(std::int64_t n, std::int64_t r) {
    if (r < 0 || n < 0 || r > n) return 0;
    if (r > n - r) r = n - r;
    std::uint64_t acc = 1;
    for (std::int64_t i = 1; i <= r; ++i) {
        acc = acc * static_cast<std::uint64_t>(n - r + i) / static_cast<std::uint64_t>(i);
    }
    return acc;
}

} // namespace hsc
