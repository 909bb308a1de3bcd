#pragma once

#include <cstdint>
#include <string_view>

namespace glm {

// FNV-1a, 64-bit. Stable across platforms, unlike std::hash.
inline std::uint64_t fnv1a(std::string_view data, std::uint64_t seed = 14695981039346656037ULL) {
  std::uint64_t h = seed;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

inline std::uint64_t fnv1a_u64(std::uint64_t value, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (int i = 0; i < 8; ++i) {
    h ^= (value >> (i * 8)) & 0xff;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace glm
