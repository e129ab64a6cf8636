#pragma once

#include <cstdint>

namespace selberg::detail {

inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Uniform on [0, 1) keyed by (seed, stream, index); no generator state.
inline double counter_uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  const std::uint64_t key = mix64(mix64(seed ^ mix64(stream)) + index);
  return double(key >> 11) * 0x1p-53;
}

}  // namespace selberg::detail
