#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

namespace listlab {

// SplitMix64. All randomized procedures in the project draw from this
// generator so that runs are reproducible across platforms and compilers
// (std::uniform_int_distribution is implementation-defined; we never use it).
class Rng {
  public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next_u64() {
        uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n) by masked rejection.
    uint64_t uniform_below(uint64_t n) {
        if (n <= 1) return 0;
        uint64_t mask = ~uint64_t{0} >> __builtin_clzll((n - 1) | 1);
        for (;;) {
            uint64_t v = next_u64() & mask;
            if (v < n) return v;
        }
    }

    // Uniform in [0, 1) with 53 random bits.
    double uniform_double() { return double(next_u64() >> 11) * 0x1.0p-53; }

    bool bernoulli(double prob) { return uniform_double() < prob; }

    // Random k-subset of {0, ..., n-1}, returned sorted.
    std::vector<uint32_t> sample_subset(uint32_t n, uint32_t k) {
        std::vector<uint32_t> idx(n);
        for (uint32_t i = 0; i < n; ++i) idx[i] = i;
        for (uint32_t i = 0; i < k && i + 1 < n; ++i) {
            uint32_t j = uint32_t(uniform_below(n - i)) + i;
            std::swap(idx[i], idx[j]);
        }
        idx.resize(k);
        std::sort(idx.begin(), idx.end());
        return idx;
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) {
            size_t j = uniform_below(i);
            std::swap(v[i - 1], v[j]);
        }
    }

  private:
    uint64_t state_;
};

// Per-trial seed derivation: hash(master_seed, trial_index). Documented and
// fixed so that campaigns are reproducible and parallelizable by index.
inline uint64_t derive_seed(uint64_t master_seed, uint64_t trial_index) {
    uint64_t z = master_seed ^ (0x9E3779B97F4A7C15ULL * (trial_index + 1));
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace listlab
