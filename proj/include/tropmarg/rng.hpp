#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>

namespace tropmarg {

/// Every sampler takes this engine by reference; seeding it is the caller's job.
using Rng = std::mt19937_64;

inline std::int64_t uniform_int(Rng& rng, std::int64_t lo, std::int64_t hi) {
  if (lo > hi) throw std::invalid_argument("empty integer range");
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

}  // namespace tropmarg
