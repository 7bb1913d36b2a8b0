#pragma once

#include <cstddef>
#include <cstdint>

namespace tfree {

// FNV-1a, 64-bit. Chosen for bit-exact cross-platform output with zero
// dependencies; every pattern in the system derives from this function.
inline constexpr std::uint64_t kFnvOffsetBasis = 0xcbf29ce484222325ULL;
inline constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

inline std::uint64_t fnv1a64(const void* data, std::size_t len) {
  const unsigned char* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = kFnvOffsetBasis;
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= kFnvPrime;
  }
  return h;
}

}  // namespace tfree
