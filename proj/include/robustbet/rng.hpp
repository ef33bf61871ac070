#pragma once

#include <cstdint>

namespace robustbet {

// SplitMix64 (Steele/Lea/Vigna): fixed, portable, 64-bit output per step.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t state) : state_(state) {}

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

// SplitMix64 finalizer as a standalone bijective mix.
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Counter-based substream: trial t draws from its own generator, so reports
// do not depend on execution order.
inline SplitMix64 trial_stream(std::uint64_t seed, std::uint64_t trial) {
    return SplitMix64(mix64(seed ^ (0xd1b54a32d192ed03ULL * (trial + 1))));
}

// Heads iff draw / 2^64 < p, evaluated exactly in extended precision so the
// endpoints p = 0 and p = 1 are deterministic.
inline bool bernoulli_heads(std::uint64_t draw, double p) {
    return static_cast<long double>(draw) < static_cast<long double>(p) * 0x1p64L;
}

inline const char* generator_id() {
    return "splitmix64; trial substream state0=mix64(seed^0xd1b54a32d192ed03*(trial+1)); "
           "heads iff draw/2^64 < p";
}

}  // namespace robustbet
