#pragma once

#include <cstdint>
#include <random>

namespace ris {

using Rng = std::mt19937_64;

/// Mixes a parent seed with an index into a child seed (SplitMix64 finalizer).
/// Work keyed by (parent, index) is reproducible regardless of the order in
/// which the indices are visited.
std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index);

inline std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t a, std::uint64_t b) {
  return derive_seed(derive_seed(parent, a), b);
}

Rng make_stream(std::uint64_t seed);

// Stream tags used below the per-angle-set seed.
namespace stream {
inline constexpr std::uint64_t kAngles = 0x416e676c;
inline constexpr std::uint64_t kGains = 0x4761696e;
inline constexpr std::uint64_t kApprox = 0x41707072;
inline constexpr std::uint64_t kPhase = 0x50686173;
}  // namespace stream

}  // namespace ris
