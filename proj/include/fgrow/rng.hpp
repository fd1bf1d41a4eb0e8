#pragma once

// Self-contained PRNG so sampling is byte-reproducible across platforms and
// standard-library versions: xoshiro256** seeded through splitmix64, with a
// stream index for parallel workers.

#include <cstdint>

#include "fgrow/rational.hpp"

namespace fgrow {

struct SplitMix64 {
    uint64_t state;
    uint64_t next() {
        uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
};

class Xoshiro256 {
  public:
    explicit Xoshiro256(uint64_t seed, uint64_t stream = 0) {
        SplitMix64 sm{seed ^ (0x9E3779B97F4A7C15ULL * (stream + 1))};
        for (auto& w : s_) w = sm.next();
        if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;  // never all-zero
    }

    uint64_t next() {
        uint64_t result = rotl(s_[1] * 5, 7) * 9;
        uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // unbiased integer in [0, n)
    uint64_t below(uint64_t n) {
        if (n == 0) throw internal_error("below(0)");
        uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return v % n;
    }

    // Bernoulli with fixed 64-bit threshold floor(p * 2^64); deterministic
    // and within 2^-64 of the exact probability.
    bool bernoulli(const BigRational& p) {
        if (p <= 0) return false;
        if (p >= 1) return true;
        BigInt t = (p.get_num() << 64) / p.get_den();
        uint64_t threshold = static_cast<uint64_t>(t.get_ui());
        // get_ui truncates to the low word; t < 2^64 ensures it fits
        return next() < threshold;
    }

  private:
    static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    uint64_t s_[4];
};

}  // namespace fgrow
