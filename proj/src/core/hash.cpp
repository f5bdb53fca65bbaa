#include "genact/core/hash.hpp"

#include <cstdio>
#include <fstream>

#include "genact/core/error.hpp"

namespace genact {

std::string hash_hex(uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

uint64_t hash_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorCode::IOError, "cannot open " + path);
  uint64_t h = kFnvOffset;
  char buf[1 << 16];
  while (in) {
    in.read(buf, sizeof(buf));
    std::streamsize n = in.gcount();
    if (n > 0) h = fnv1a(buf, static_cast<size_t>(n), h);
  }
  return h;
}

}  // namespace genact
