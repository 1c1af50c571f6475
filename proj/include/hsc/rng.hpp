#pragma once

#include <cmath>
#include <cstdint>
#include <span>

namespace hsc {

// Counter-based deterministic RNG built on the splitmix64 finalizer.
// Identical (seed, key) pairs produce identical streams on every platform,
// so samplers can key randomness per edge and stay independent of
// enumeration order.

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(splitmix64(seed ^ 0x5851f42d4c957f2dULL)) {}

    // Derive a stream keyed by an extra value (e.g. a hashed edge).
    Rng fork(std::uint64_t key) const {
        Rng r(0);
        r.state_ = splitmix64(state_ ^ splitmix64(key ^ 0x2545f4914f6cdd1dULL));
        return r;
    }

    std::uint64_t next_u64() {
        counter_ += 0x9e3779b97f4a7c15ULL;
        return splitmix64(state_ ^ counter_);
    }

    // Uniform on [0, 1).
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform integer on [0, bound) by rejection, bound > 0.
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t limit = bound * (UINT64_MAX / bound);
        std::uint64_t v;
        do {
            v = next_u64();
        } while (v >= limit);
        return v % bound;
    }

    // Standard normal via Box-Muller.
    double next_gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1, u2;
        do {
            u1 = next_double();
        } while (u1 <= 0.0);
        u2 = next_double();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(t);
        have_spare_ = true;
        return r * std::cos(t);
    }

private:
    std::uint64_t state_ = 0;
    std::uint64_t counter_ = 0;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

// Order-independent key for a canonical node sequence.
inline std::uint64_t edge_key(std::span<const std::uint32_t> nodes) {
    std::uint64_t h = 0x8c2f1e6d5a3b4c79ULL;
    for (std::uint32_t v : nodes) {
        h = splitmix64(h ^ v);
    }
    return h;
}

// Deterministic combiner for (base seed, grid point, trial) style derivations.
inline std::uint64_t hash_combine(std::uint64_t a, std::uint64_t b) {
    return splitmix64(a ^ splitmix64(b ^ 0xd6e8feb86659fd93ULL));
}

} // namespace hsc
