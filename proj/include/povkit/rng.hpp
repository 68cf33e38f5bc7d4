#ifndef POVKIT_RNG_HPP
#define POVKIT_RNG_HPP

#include <cstdint>
#include <random>

namespace povkit::rng {

// SplitMix64 finalizer. Used to spread user seeds and to derive substream
// seeds; mt19937_64 is fully specified by the standard, so every stream is
// reproducible across platforms.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

/// Seed of substream `stream` of the stream family rooted at `seed`.
/// Distinct (seed, stream) pairs map to distinct mixer inputs.
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t stream) {
    return splitmix64(seed ^ (0x9E3779B97F4A7C15ull * (stream + 1)));
}

inline std::mt19937_64 engine(std::uint64_t seed) {
    return std::mt19937_64(splitmix64(seed));
}

/// Uniform draw on the open interval (0,1); never returns 0 or 1, so inverse
/// CDFs of unbounded distributions stay finite.
inline double uniform01(std::mt19937_64& gen) {
    return (static_cast<double>(gen() >> 11) + 0.5) * 0x1.0p-53;
}

/// Uniform index in [0, n). Deterministic given the engine state.
inline std::size_t uniform_index(std::mt19937_64& gen, std::size_t n) {
    return static_cast<std::size_t>(uniform01(gen) * static_cast<double>(n));
}

} // namespace povkit::rng

#endif
