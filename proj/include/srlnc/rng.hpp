#pragma once

#include <cstdint>

namespace srlnc::rng {

// One step of splitmix64 (Steele, Lea and Vigna, "Fast splittable
// pseudorandom number generators"). Serves both as the per-stream engine
// and as the mixer that derives substream seeds.
inline uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Seed for the index-th substream under a master seed. Each index lands a
// full golden-ratio increment away in the underlying state space and is then
// mixed, so substreams are independent no matter how indices are assigned
// to workers.
inline uint64_t substream_seed(uint64_t master_seed, uint64_t index) {
    uint64_t s = master_seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
    return splitmix64(s);
}

// Minimal random stream, one instance per Monte Carlo trial. Construction
// is a single 64-bit store, which matters when millions of short-lived
// streams are created.
class Stream {
public:
    explicit Stream(uint64_t seed) : state_(seed) {}

    uint64_t next() { return splitmix64(state_); }

    // Uniform double in [0, 1) using 53 random bits.
    double uniform() { return double(next() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, bound), bound >= 1. Multiply-shift on the high
    // 32 bits; the bias is under bound / 2^32, irrelevant for the small
    // bounds (field sizes) used here.
    uint32_t below(uint32_t bound) {
        return uint32_t((uint64_t(next() >> 32) * bound) >> 32);
    }

private:
    uint64_t state_;
};

}  // namespace srlnc::rng
