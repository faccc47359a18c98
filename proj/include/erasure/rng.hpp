#pragma once

#include <cstdint>

namespace erasure {

/// SplitMix64 (Steele, Lea & Flood). Used only to expand seeds into
/// generator states.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

  private:
    std::uint64_t state_;
};

/// Deterministic random stream: xoshiro256++ (Blackman & Vigna 2019).
///
/// Stream (seed, k) is seeded with words 4k..4k+3 of the SplitMix64
/// sequence started at `seed`, so distinct (seed, index) pairs give
/// independent, reproducible streams. All draws below are defined purely
/// in terms of 64-bit generator output, so sequences are portable across
/// compilers and platforms. seed = 0 is an ordinary valid seed.
class RngStream {
  public:
    explicit RngStream(std::uint64_t seed, std::uint64_t stream_index = 0) {
        SplitMix64 sm(seed);
        for (std::uint64_t skip = 0; skip < 4 * stream_index; ++skip) sm.next();
        bool all_zero = true;
        for (auto& word : state_) {
            word = sm.next();
            all_zero = all_zero && word == 0;
        }
        if (all_zero) state_[0] = 1;  // xoshiro state must not be identically zero
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

    /// Uniform double in [0,1) with 53 random bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0,n). Lemire multiply-shift with rejection,
    /// so the result is exactly uniform.
    std::uint32_t next_below(std::uint32_t n) {
        std::uint64_t x = next_u64() >> 32;
        std::uint64_t m = x * n;
        std::uint32_t low = static_cast<std::uint32_t>(m);
        if (low < n) {
            const std::uint32_t threshold = (0u - n) % n;
            while (low < threshold) {
                x = next_u64() >> 32;
                m = x * n;
                low = static_cast<std::uint32_t>(m);
            }
        }
        return static_cast<std::uint32_t>(m >> 32);
    }

    /// Bernoulli(p) draw.
    bool next_bernoulli(double p) { return next_double() < p; }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::uint64_t state_[4];
};

}  // namespace erasure
