#pragma once

#include <array>
#include <cstdint>

namespace sdlat {

// Deterministic PRNG (xoshiro256++ seeded through splitmix64). We avoid
// <random> distributions because their output is implementation-defined;
// every seeded result in this toolkit must be reproducible across compilers.
struct Rng {
    std::array<uint64_t, 4> s;

    explicit Rng(uint64_t seed) {
        uint64_t x = seed;
        for (auto& w : s) {
            x += 0x9e3779b97f4a7c15ULL;
            uint64_t z = x;
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
            w = z ^ (z >> 31);
        }
    }

    static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    uint64_t next() {
        uint64_t result = rotl(s[0] + s[3], 23) + s[0];
        uint64_t t = s[1] << 17;
        s[2] ^= s[0];
        s[3] ^= s[1];
        s[1] ^= s[2];
        s[0] ^= s[3];
        s[2] ^= t;
        s[3] = rotl(s[3], 45);
        return result;
    }

    // Uniform in [0, bound) by rejection; bound > 0.
    uint64_t below(uint64_t bound) {
        uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

    bool coin() { return next() >> 63; }
};

// Stream-splitting helper: independent seed for a (seed, index) pair.
inline uint64_t derive_seed(uint64_t seed, uint64_t index) {
    uint64_t z = seed ^ (0x9e3779b97f4a7c15ULL * (index + 1));
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace sdlat
