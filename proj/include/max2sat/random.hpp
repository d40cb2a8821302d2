#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace max2sat {

// The standard distributions are implementation-defined; everything drawn
// here is a fixed function of the engine output so runs reproduce across
// standard libraries.
using Engine = std::mt19937_64;

/// Engine for stream `stream` of a seeded computation (e.g. one restart).
inline Engine make_engine(std::uint64_t seed, std::uint64_t stream = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream),
                    static_cast<std::uint32_t>(stream >> 32)};
  return Engine(seq);
}

/// Uniform double in [0, 1) with 53 random mantissa bits.
inline double uniform01(Engine& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, bound). bound must be positive.
inline std::uint64_t uniform_below(Engine& rng, std::uint64_t bound) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t r;
  do {
    r = rng();
  } while (r >= limit);
  return r % bound;
}

inline bool coin(Engine& rng) { return (rng() >> 63) != 0; }

template <typename T>
void shuffle(std::span<T> items, Engine& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::swap(items[i - 1], items[uniform_below(rng, i)]);
  }
}

}  // namespace max2sat
