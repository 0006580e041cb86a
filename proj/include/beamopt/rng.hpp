#pragma once
#include <cmath>
#include <cstdint>

// Seedable counter-addressed random streams: stream(seed, idx) yields an
// independent generator for work item idx, so parallel and serial runs draw
// identical numbers. xoshiro256++ core, splitmix64 state expansion.
namespace beamopt::rng {

inline uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

class Xoshiro256pp {
public:
    using result_type = uint64_t;

    explicit Xoshiro256pp(uint64_t seed) {
        uint64_t sm = seed;
        for (uint64_t& word : s_) word = splitmix64(sm);
    }

    static constexpr uint64_t min() { return 0; }
    static constexpr uint64_t max() { return ~0ULL; }

    uint64_t operator()() {
        const uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // uniform in [0, 1), 53-bit resolution
    double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    // unit-mean exponential
    double exponential() { return -std::log1p(-uniform()); }

private:
    static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    uint64_t s_[4];
};

// Independent stream for work item idx under a master seed.
inline Xoshiro256pp stream(uint64_t seed, uint64_t idx) {
    uint64_t sm = seed;
    const uint64_t a = splitmix64(sm);
    sm = a ^ (idx * 0x9e3779b97f4a7c15ULL + 0x243f6a8885a308d3ULL);
    uint64_t tail = splitmix64(sm);
    return Xoshiro256pp(tail);
}

// Exact Poisson sample; multiplicative method, halving recursion keeps the
// running product away from underflow for large means.
inline uint64_t poisson(Xoshiro256pp& g, double mean) {
    if (mean <= 0.0) return 0;
    if (mean > 500.0) {
        const double half = mean * 0.5;
        return poisson(g, half) + poisson(g, mean - half);
    }
    const double limit = std::exp(-mean);
    uint64_t k = 0;
    double prod = g.uniform();
    while (prod > limit) {
        ++k;
        prod *= g.uniform();
    }
    return k;
}

}  // namespace beamopt::rng
