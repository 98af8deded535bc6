#pragma once

#include <cstdint>
#include <random>

namespace symrank {

/// Seeded generator with unbiased bounded draws. One instance per thread;
/// parallel callers derive independent streams with derive_seed.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform on [0, bound) by rejection from the native 64-bit word.
    std::uint64_t uniform_below(std::uint64_t bound) {
        // 2^64 mod bound, computed without overflow
        const std::uint64_t excess = (0 - bound) % bound;
        const std::uint64_t limit = ~std::uint64_t{0} - excess;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x > limit);
        return x % bound;
    }

    /// SplitMix64 finalizer over (seed, stream).
    static std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
        std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace symrank
