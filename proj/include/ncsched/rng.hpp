/*
 * Seeded random streams for reproducible simulation runs.
 *
 * Everything random in the simulator flows through these generators so that
 * results are bit-identical for a given seed regardless of platform, stdlib
 * version, or how many worker threads process the trials. std::random
 * distributions are implementation-defined, so sampling is done by hand.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

namespace ncsched {

// SplitMix64; used for seeding and for deriving independent sub-streams.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Derives the seed of an independent stream from a base seed and a tag list,
// e.g. mix_seed(master, point_index, trial_index).
constexpr std::uint64_t mix_seed(std::uint64_t base) { return splitmix64(base); }

template <typename... Tags>
constexpr std::uint64_t mix_seed(std::uint64_t base, std::uint64_t tag, Tags... rest) {
    return mix_seed(splitmix64(base ^ splitmix64(tag + 0x632be59bd9b4e019ULL)), rest...);
}

// xoshiro256++ by Blackman & Vigna (public domain reference implementation).
class Rng {
  public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t x = seed;
        for (auto& word : state_) {
            x = splitmix64(x);
            word = x;
        }
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform in [0, 1).
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in (0, 1]; safe as a log() argument.
    double next_double_open() {
        return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    }

    // Uniform integer in [0, n), unbiased. n must be positive.
    std::uint64_t next_below(std::uint64_t n) {
        const std::uint64_t reject_below = (-n) % n;  // 2^64 mod n
        for (;;) {
            const std::uint64_t x = next_u64();
            if (x >= reject_below) return x % n;
        }
    }

    // Standard normal via Box-Muller. One pair of draws per sample keeps the
    // stream position independent of call history.
    double next_normal() {
        const double u1 = next_double_open();
        const double u2 = next_double();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    // Exponential with unit mean (squared magnitude of a unit-variance
    // complex Gaussian).
    double next_exponential() { return -std::log(next_double_open()); }

    // k distinct values from {0..n-1}, ascending. Partial Fisher-Yates.
    std::vector<int> sample_without_replacement(int n, int k) {
        std::vector<int> pool(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i;
        for (int i = 0; i < k; ++i) {
            const auto j = i + static_cast<int>(next_below(static_cast<std::uint64_t>(n - i)));
            std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
        }
        pool.resize(static_cast<std::size_t>(k));
        std::sort(pool.begin(), pool.end());
        return pool;
    }

  private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4];
};

}  // namespace ncsched
