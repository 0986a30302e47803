#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

namespace tubeforge {

// 64-bit FNV-1a. Used for payload integrity in manifests and sidecars.
inline std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes,
                             std::uint64_t seed = 14695981039346656037ULL) {
  std::uint64_t h = seed;
  for (std::uint8_t b : bytes) {
    h ^= b;
    h *= 1099511628211ULL;
  }
  return h;
}

inline std::uint64_t fnv1a64(const void* data, std::size_t size) {
  return fnv1a64(
      std::span<const std::uint8_t>(static_cast<const std::uint8_t*>(data), size));
}

}  // namespace tubeforge
