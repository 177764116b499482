#pragma once

#include <cstdint>
#include <random>

namespace kuracycle {

inline std::uint64_t splitmix64(std::uint64_t z)
{
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Independent generator keyed by (seed, stream, index).  Used so that every
/// facet / start / trajectory draws the same numbers under any schedule.
inline std::mt19937_64 substream(std::uint64_t seed, std::uint64_t stream, std::uint64_t index = 0)
{
    const std::uint64_t k = splitmix64(splitmix64(splitmix64(seed) ^ stream) ^ index);
    return std::mt19937_64(k);
}

// Stream tags.
inline constexpr std::uint64_t kInstanceStream = 0x1;
inline constexpr std::uint64_t kPathStream = 0x2;
inline constexpr std::uint64_t kOracleStream = 0x3;
inline constexpr std::uint64_t kMultistartStream = 0x4;
inline constexpr std::uint64_t kOdeStream = 0x5;

}  // namespace kuracycle
