#pragma once

#include <cstdint>
#include <random>

namespace qchain::rng {

/// splitmix64 finalizer; bijective 64-bit mixer.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Independent stream domains carved out of a single user seed, so the
/// parameter initializer and the sampler never share a random sequence.
enum class Stream : std::uint64_t {
    ParameterInit = 1,
    Sampler = 2,
};

/// Deterministic engine for (seed, stream, index). Sampling shards use
/// index = shard number; the resulting streams are independent of how
/// shards are assigned to worker threads.
inline std::mt19937_64 make_stream(std::uint64_t seed, Stream stream, std::uint64_t index = 0) {
    std::uint64_t h = mix64(seed);
    h = mix64(h ^ mix64(static_cast<std::uint64_t>(stream)));
    h = mix64(h ^ mix64(index));
    return std::mt19937_64{h};
}

/// Uniform double in [0, 1) with 53 random bits. std::uniform_real_distribution
/// is implementation-defined; this mapping is pinned for reproducibility.
inline double uniform_double(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

} // namespace qchain::rng
