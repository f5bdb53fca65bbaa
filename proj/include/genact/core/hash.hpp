#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace genact {

inline constexpr uint64_t kFnvOffset = 1469598103934665603ull;
inline constexpr uint64_t kFnvPrime = 1099511628211ull;

inline uint64_t fnv1a(const void* bytes, size_t n, uint64_t h = kFnvOffset) {
  const auto* p = static_cast<const unsigned char*>(bytes);
  for (size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= kFnvPrime;
  }
  return h;
}

inline uint64_t fnv1a(const std::string& s, uint64_t h = kFnvOffset) {
  return fnv1a(s.data(), s.size(), h);
}

template <typename T>
uint64_t fnv1a_values(const std::vector<T>& v, uint64_t h = kFnvOffset) {
  return fnv1a(v.data(), v.size() * sizeof(T), h);
}

std::string hash_hex(uint64_t h);

// Content hash of a file on disk.
uint64_t hash_file(const std::string& path);

}  // namespace genact
