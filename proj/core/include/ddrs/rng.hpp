#pragma once

#include <cstdint>
#include <random>

namespace ddrs {

using Rng = std::mt19937_64;

// SplitMix64 finalizer; used to spread seeds before feeding mt19937_64.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Independent per-trial stream from (master seed, trial index). Trials can run
// in any order or in parallel and still reproduce bit-identically.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(splitmix64(master) ^ splitmix64(index + 0xA5A5A5A5A5A5A5A5ull));
}

inline Rng make_rng(std::uint64_t seed) { return Rng{splitmix64(seed)}; }

// Uniform double in [0, 1) with 53 random bits. Hand-rolled so the stream is
// identical across standard library implementations.
inline double next_unit(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline unsigned next_bit(Rng& rng) { return static_cast<unsigned>(rng() >> 63); }

// Unbiased integer in [0, bound) by rejection.
inline std::uint64_t next_below(Rng& rng, std::uint64_t bound) {
    if (bound <= 1) {
        return 0;
    }
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t v = rng();
    while (v >= limit) {
        v = rng();
    }
    return v % bound;
}

} // namespace ddrs
