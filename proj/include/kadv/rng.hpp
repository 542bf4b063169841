#pragma once

#include <cstdint>

namespace kadv {

// Deterministic, portable generator for random pivot rules.
// State initialization: one splitmix64 step (constants from Steele et al.).
// Stream: xorshift64* with shift triple (12, 25, 27) and the
// 2685821657736338717 multiplier.
struct Rng {
    uint64_t state;

    explicit Rng(uint64_t seed) {
        uint64_t z = seed + 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        state = z ^ (z >> 31);
        if (state == 0) state = 0x9e3779b97f4a7c15ULL;
    }

    uint64_t next() {
        uint64_t x = state;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        state = x;
        return x * 2685821657736338717ULL;
    }

    // Uniform in [0, n). Modulo bias is irrelevant here; determinism is the
    // contract.
    uint64_t below(uint64_t n) { return next() % n; }
};

}  // namespace kadv
