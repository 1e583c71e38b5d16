#pragma once

#include <cstdint>
#include <random>

namespace dronefilm {

// std::mt19937_64 output is specified by the standard; the library
// distributions are not, so index sampling goes through this helper to keep
// generated scenarios identical across standard libraries.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t limit = std::mt19937_64::max() - (std::mt19937_64::max() % n);
  std::uint64_t draw = rng();
  while (draw >= limit) draw = rng();
  return draw % n;
}

}  // namespace dronefilm
