#pragma once

#include <cstdint>

namespace convexity {

// SplitMix64 finalizer: full-avalanche bijection on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Counter-based generator: every output word is a pure function of
// (seed, draw index, word index), so draws can be evaluated in any order
// and from any thread with identical results.
class CounterRng {
public:
    explicit constexpr CounterRng(std::uint64_t seed)
        : base_(mix64(seed ^ 0x5851F42D4C957F2DULL)) {}

    constexpr std::uint64_t word(std::uint64_t draw_index, unsigned word_index) const {
        return mix64(base_ + draw_index * 0x9E3779B97F4A7C15ULL +
                     (static_cast<std::uint64_t>(word_index) + 1) * 0xD1B54A32D192ED03ULL);
    }

    // Uniform double in [0, 1) with 53 random bits.
    constexpr double uniform(std::uint64_t draw_index, unsigned word_index) const {
        return static_cast<double>(word(draw_index, word_index) >> 11) * 0x1.0p-53;
    }

private:
    std::uint64_t base_;
};

} // namespace convexity
