#include <iostream>

#include "genact/core/rng.hpp"
#include "genact/trackhead/trackhead.hpp"

namespace genact::trackhead {

worldsim::PointSet sample_points(const worldsim::WorldState& state, int count, uint64_t seed,
                                 PointStrategy strategy, const worldsim::SimConfig& cfg) {
  if (count < 1) raise(ErrorCode::InvalidInput, "sample_points: count < 1");
  Rng rng(derive_seed(seed, "sample_points"));
  worldsim::PointSet out;
  out.coords.reserve(static_cast<size_t>(count));

  if (strategy == PointStrategy::on_object) {
    // pixel centers covered by any rendered object (the sprite is not an object)
    std::vector<worldsim::Vec2> mask;
    int n = cfg.image_size;
    for (int y = 0; y < n; ++y)
      for (int x = 0; x < n; ++x) {
        worldsim::Vec2 p{(x + 0.5) / n, (y + 0.5) / n};
        for (const auto& o : state.objects) {
          if (!worldsim::object_rendered(o)) continue;
          if (worldsim::object_contains(o, p, cfg.travel)) {
            mask.push_back(p);
            break;
          }
        }
      }
    if (mask.empty()) {
      std::cerr << "sample_points: empty object mask, falling back to uniform\n";
    } else {
      for (int i = 0; i < count; ++i)
        out.coords.push_back(
            mask[static_cast<size_t>(rng.uniform_int(0, static_cast<int>(mask.size()) - 1))]);
      return out;
    }
  }

  for (int i = 0; i < count; ++i) out.coords.push_back({rng.uniform(), rng.uniform()});
  return out;
}

}  // namespace genact::trackhead
