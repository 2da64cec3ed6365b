#pragma once

#include <cstdint>
#include <random>

namespace freshcov {

namespace stream {
inline constexpr std::uint64_t kPlacement = 1;
inline constexpr std::uint64_t kPolicy = 2;
inline constexpr std::uint64_t kChannel = 3;   // + sensor index << 8
inline constexpr std::uint64_t kHarvest = 4;   // + sensor index << 8
}  // namespace stream

/// SplitMix64 finaliser.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Seed for an independent stream identified by `(seed, stream_id, index)`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream_id, std::uint64_t index = 0) noexcept;

/// Uniform double in [0, 1) from the top 53 bits; identical on every
/// standard library, unlike std::uniform_real_distribution.
inline double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace freshcov
