#pragma once

#include <cstdint>
#include <random>

namespace amplab {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Stream keyed by (master_seed, trial_index): trials are order-insensitive
/// and independent, so Monte Carlo batches parallelize reproducibly.
inline std::mt19937_64 trial_rng(std::uint64_t master_seed, std::uint64_t trial_index) {
  const std::uint64_t key = splitmix64(splitmix64(master_seed) ^ splitmix64(~trial_index));
  return std::mt19937_64(key);
}

}  // namespace amplab
