#pragma once

#include <cstdint>
#include <random>

namespace stochsat {

using Rng = std::mt19937_64;

// splitmix64 finalizer; used to decorrelate seeds of neighbouring substreams.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Independent generator for stream `index` of a run seeded with `seed`.
inline Rng substream(std::uint64_t seed, std::uint64_t index) {
  return Rng{mix64(mix64(seed) ^ mix64(index + 0x632be59bd9b4e019ULL))};
}

} // namespace stochsat
