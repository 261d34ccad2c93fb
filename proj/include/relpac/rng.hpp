#pragma once

#include <cstdint>

namespace relpac {

// 64-bit mixing function (splitmix64 finalizer). Used for seed derivation
// so that every (master seed, replication, arm) triple maps to a fixed,
// platform-independent stream seed.
inline constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Derives the seed of sub-stream `index` from `seed`. Pure function; the
// harness composes it as derive_stream(derive_stream(master, rep), arm).
inline constexpr std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t index) noexcept {
    return mix64(seed ^ (0x9E3779B97F4A7C15ULL * (index + 1)));
}

// xoshiro256** generator (Blackman & Vigna). Fixed algorithm, identical
// output on every platform, cheap enough for ~1e9-draw runs.
class Xoshiro256 {
public:
    using result_type = std::uint64_t;

    explicit Xoshiro256(std::uint64_t seed = 0) noexcept { reseed(seed); }

    void reseed(std::uint64_t seed) noexcept {
        // expand via splitmix64 sequence
        std::uint64_t x = seed;
        for (auto& w : s_) {
            x += 0x9E3779B97F4A7C15ULL;
            std::uint64_t z = x;
            z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
            z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
            w = z ^ (z >> 31);
        }
    }

    std::uint64_t operator()() noexcept {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // uniform double in [0, 1), 53 random bits
    double u01() noexcept { return static_cast<double>(operator()() >> 11) * 0x1.0p-53; }

    // uniform double in [a, b)
    double uniform(double a, double b) noexcept { return a + (b - a) * u01(); }

    static constexpr std::uint64_t min() noexcept { return 0; }
    static constexpr std::uint64_t max() noexcept { return ~0ULL; }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
        return (x << k) | (x >> (64 - k));
    }
    std::uint64_t s_[4];
};

} // namespace relpac
