#pragma once

// Deterministic random sources.
//
// Sequential draws come from std::mt19937_64. A run is identified by one
// 64-bit seed; independent streams (worker shards, individual size-biased
// trees) are seeded with derive_seed(seed, stream), a SplitMix64 mix of both
// values. Random-access draws (degrees of lazily explored trees) use
// SplitMix64 keyed by a hash of the vertex label.

#include <cstdint>
#include <limits>
#include <random>
#include <string_view>

namespace patlim {

inline constexpr std::string_view kRngAlgorithm = "mt19937_64; streams seeded by splitmix64(seed, stream)";

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

// UniformRandomBitGenerator over SplitMix64; used for hashed vertex draws.
class SplitMix64 {
public:
    using result_type = std::uint64_t;
    explicit SplitMix64(std::uint64_t state) : state_(state) {}
    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
    result_type operator()();

private:
    std::uint64_t state_;
};

class SeededRng {
public:
    using result_type = std::uint64_t;
    explicit SeededRng(std::uint64_t seed, std::uint64_t stream = 0);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
    result_type operator()() { return engine_(); }

    // Uniform on {0, ..., bound-1}; bound ≥ 1.
    std::uint64_t below(std::uint64_t bound);

private:
    std::mt19937_64 engine_;
};

// Unbiased draw on {0, ..., bound-1} from any 64-bit generator.
template <class Gen>
std::uint64_t uniform_below(Gen& gen, std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        std::uint64_t r = gen();
        if (r >= threshold) return r % bound;
    }
}

// Uniform on [0, 1) with 53 random bits.
template <class Gen>
double uniform_unit(Gen& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

}  // namespace patlim
