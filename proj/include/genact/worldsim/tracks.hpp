#pragma once

#include <cstdint>
#include <vector>

#include "genact/worldsim/types.hpp"

namespace genact::worldsim {

struct PointSet {
  // P x (x, y), normalized to [0,1]^2
  std::vector<Vec2> coords;
  int size() const { return static_cast<int>(coords.size()); }
};

struct TrackSet {
  int num_points = 0;
  int length = 0;  // T
  std::vector<Vec2> coords;        // P*T, row-major (point-major)
  std::vector<uint8_t> visibility; // P*T

  Vec2& at(int p, int t) { return coords[static_cast<size_t>(p) * length + t]; }
  const Vec2& at(int p, int t) const { return coords[static_cast<size_t>(p) * length + t]; }
  uint8_t& vis(int p, int t) { return visibility[static_cast<size_t>(p) * length + t]; }
  uint8_t vis(int p, int t) const { return visibility[static_cast<size_t>(p) * length + t]; }
};

// Ground-truth tracker: each point binds at t=0 to the topmost object part
// (or background) beneath it, then follows that part's closed-form transform.
// Visibility is false whenever the point is covered by the sprite or by an
// entity above its bound part.
TrackSet oracle_tracks(const std::vector<WorldState>& states, const PointSet& points,
                       Embodiment embodiment, const SimConfig& cfg);

// Per-frame embodiment variant (generated videos show no sprite in frame 0).
TrackSet oracle_tracks(const std::vector<WorldState>& states, const PointSet& points,
                       const std::vector<Embodiment>& embodiments, const SimConfig& cfg);

}  // namespace genact::worldsim
