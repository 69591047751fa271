#pragma once

#include <cstdint>
#include <random>

namespace betti {

using Rng = std::mt19937_64;

/// Independent stream tags. Each phase of a run draws from its own tag so
/// that no two phases share random numbers.
enum class Stream : std::uint64_t {
    paths = 1,
    simplex_samples = 2,
    graph = 3,
    diagnostics = 4,
};

/// Deterministic substream for (master seed, phase, worker).
inline Rng make_stream(std::uint64_t seed, Stream tag, std::uint64_t worker = 0) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(tag), static_cast<std::uint32_t>(worker),
                      static_cast<std::uint32_t>(worker >> 32)};
    return Rng(seq);
}

inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
    return std::uniform_int_distribution<std::uint64_t>(0, bound - 1)(rng);
}

}  // namespace betti
