#include "genact/core/rng.hpp"

#include <sstream>

#include "genact/core/hash.hpp"

namespace genact {

std::string Rng::serialize() const {
  std::ostringstream os;
  os << gen_ << " " << (has_spare_ ? 1 : 0) << " ";
  os.precision(17);
  os << spare_;
  return os.str();
}

void Rng::deserialize(const std::string& text) {
  std::istringstream is(text);
  is >> gen_;
  int spare_flag = 0;
  is >> spare_flag >> spare_;
  has_spare_ = spare_flag != 0;
}

uint64_t derive_seed(uint64_t base, const std::string& tag) {
  uint64_t h = fnv1a(&base, sizeof(base));
  h = fnv1a(tag, h);
  return h;
}

uint64_t derive_seed(uint64_t base, const std::string& tag, uint64_t index) {
  uint64_t h = derive_seed(base, tag);
  return fnv1a(&index, sizeof(index), h);
}

}  // namespace genact
