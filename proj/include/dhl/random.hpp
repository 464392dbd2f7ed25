#pragma once

#include "dhl/geometry.hpp"

#include <cstdint>
#include <random>

namespace dhl {

// independent generator per (seed, stream); parallel loops hand out streams by index
inline std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32), 0x9e3779b9u};
  return std::mt19937_64(seq);
}

inline Complex complex_gaussian(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  const double re = g(rng);
  const double im = g(rng);
  return {re, im};
}

// uniform on the unit sphere of C^3
inline Vec3 random_unit_vec3(std::mt19937_64& rng) {
  Vec3 x;
  for (int i = 0; i < 3; ++i) x[i] = complex_gaussian(rng);
  return x / x.norm();
}

inline constexpr std::uint64_t kChunk = 1024;

}  // namespace dhl
