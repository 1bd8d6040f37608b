#pragma once

#include <cstdint>
#include <random>

namespace llmastar {

/// mt19937_64 with a bounded draw that does not depend on the standard
/// library's distribution implementations, so seeded output is identical
/// across platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Child stream `index` of `seed`, decorrelated through splitmix64.
    static Rng split(std::uint64_t seed, std::uint64_t index) { return Rng(splitmix64(splitmix64(seed) ^ index)); }

    /// Uniform integer in [lo, hi] (inclusive), by rejection.
    std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo);
        if (span == UINT64_MAX) return static_cast<std::int64_t>(engine_());
        const std::uint64_t range = span + 1;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % range;
        std::uint64_t draw;
        do {
            draw = engine_();
        } while (draw >= limit);
        return lo + static_cast<std::int64_t>(draw % range);
    }

    static std::uint64_t splitmix64(std::uint64_t x) {
        x += 0x9E3779B97F4A7C15ull;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
        return x ^ (x >> 31);
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace llmastar
