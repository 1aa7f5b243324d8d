// Copyright 2026 The StyCona Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

namespace stycona {

/// Counter-seeded xoshiro256++ stream. Every randomized operation in the
/// library draws from a stream derived from (master seed, sample index), so
/// results never depend on thread count or iteration order. The generator is
/// hand-rolled (not std::mt19937 + distributions) to keep byte-level output
/// identical across standard library implementations.
class RandomStream {
public:
    /// Stream keyed by the master seed alone.
    static RandomStream from_seed(uint64_t seed) { return substream(seed, 0); }

    /// Independent stream for one (seed, index) pair.
    static RandomStream substream(uint64_t seed, uint64_t index) {
        RandomStream s;
        uint64_t x = seed ^ (0x9E3779B97F4A7C15ULL * (index + 1));
        for (auto& word : s.state_) word = splitmix64(x);
        if ((s.state_[0] | s.state_[1] | s.state_[2] | s.state_[3]) == 0) s.state_[0] = 1;
        return s;
    }

    uint64_t next_u64() {
        const uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1), 53-bit resolution.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform double in [lo, hi).
    double next_uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    /// Unbiased uniform integer in [0, n). Requires n >= 1.
    uint64_t next_below(uint64_t n) {
        const uint64_t threshold = (0 - n) % n;
        for (;;) {
            const uint64_t r = next_u64();
            if (r >= threshold) return r % n;
        }
    }

    bool next_coin(double prob_true) { return next_double() < prob_true; }

    /// Standard normal via Box-Muller (one value per call, no caching, so the
    /// draw count stays predictable).
    double next_gaussian() {
        double u1 = next_double();
        while (u1 <= 0.0) u1 = next_double();
        const double u2 = next_double();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
    }

    /// First t entries of a uniform random permutation of [0, k), sorted
    /// ascending. Requires t <= k.
    std::vector<int> sample_without_replacement(int t, int k);

private:
    static uint64_t splitmix64(uint64_t& x) {
        x += 0x9E3779B97F4A7C15ULL;
        uint64_t z = x;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    static uint64_t rotl(uint64_t x, int s) { return (x << s) | (x >> (64 - s)); }

    uint64_t state_[4] = {};
};

inline std::vector<int> RandomStream::sample_without_replacement(int t, int k) {
    std::vector<int> pool(k);
    for (int i = 0; i < k; ++i) pool[i] = i;
    for (int i = 0; i < t; ++i) {
        const int j = i + static_cast<int>(next_below(static_cast<uint64_t>(k - i)));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(t);
    std::sort(pool.begin(), pool.end());
    return pool;
}

/// Derives a fresh 64-bit seed from a master seed and a label (e.g. epoch
/// number) without perturbing any existing stream.
inline uint64_t derive_seed(uint64_t seed, uint64_t label) {
    uint64_t x = seed ^ (0xD1B54A32D192ED03ULL * (label + 1));
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

}  // namespace stycona
