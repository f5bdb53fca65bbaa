#include "genact/worldsim/tracks.hpp"

#include "genact/core/error.hpp"
#include "genact/worldsim/render.hpp"

namespace genact::worldsim {
namespace {

struct Binding {
  int object = -1;  // -1 = background
  int part = 0;     // 0 base/rigid, 1 slide, 2 handle (handle rides the slide)
  Vec2 local;       // offset from the part anchor at t=0
};

Vec2 part_anchor(const ObjectSpec& o, int part, double travel) {
  if (is_articulated(o.shape) && part >= 1) return slide_anchor(o, travel);
  return o.pose;
}

Binding bind_point(const WorldState& s0, const Vec2& p, double travel) {
  for (int i = static_cast<int>(s0.objects.size()) - 1; i >= 0; --i) {
    const auto& o = s0.objects[static_cast<size_t>(i)];
    if (!object_rendered(o)) continue;
    int part = 0;
    if (object_contains(o, p, travel, &part)) {
      Binding b;
      b.object = i;
      b.part = part;
      b.local = p - part_anchor(o, part, travel);
      return b;
    }
  }
  return Binding{};  // background
}

}  // namespace

TrackSet oracle_tracks(const std::vector<WorldState>& states, const PointSet& points,
                       const std::vector<Embodiment>& embodiments, const SimConfig& cfg) {
  if (states.empty()) raise(ErrorCode::InvalidInput, "oracle_tracks: empty state sequence");
  if (embodiments.size() != states.size())
    raise(ErrorCode::InvalidInput, "oracle_tracks: embodiment count");
  const int P = points.size();
  const int T = static_cast<int>(states.size());
  TrackSet out;
  out.num_points = P;
  out.length = T;
  out.coords.resize(static_cast<size_t>(P) * T);
  out.visibility.assign(static_cast<size_t>(P) * T, 1);

  std::vector<Binding> bindings;
  bindings.reserve(static_cast<size_t>(P));
  for (int p = 0; p < P; ++p)
    bindings.push_back(bind_point(states[0], points.coords[static_cast<size_t>(p)], cfg.travel));

  for (int t = 0; t < T; ++t) {
    const auto& st = states[static_cast<size_t>(t)];
    for (int p = 0; p < P; ++p) {
      const Binding& b = bindings[static_cast<size_t>(p)];
      Vec2 pos;
      if (b.object < 0) {
        pos = points.coords[static_cast<size_t>(p)];
      } else {
        const auto& o = st.objects[static_cast<size_t>(b.object)];
        pos = part_anchor(o, b.part, cfg.travel) + b.local;
      }
      pos = clamp01(pos);
      out.at(p, t) = pos;

      // Visibility: bound part must still render, nothing above it may cover
      // the point, and the sprite (topmost) must not cover it.
      bool visible = true;
      if (b.object >= 0 && !object_rendered(st.objects[static_cast<size_t>(b.object)]))
        visible = false;
      if (visible) {
        int above_from = b.object < 0 ? 0 : b.object;
        for (int i = static_cast<int>(st.objects.size()) - 1; i >= above_from && visible; --i) {
          const auto& o = st.objects[static_cast<size_t>(i)];
          if (!object_rendered(o)) continue;
          int part = 0;
          if (!object_contains(o, pos, cfg.travel, &part)) continue;
          if (i > above_from || b.object < 0) {
            visible = false;
          } else if (i == b.object && part > b.part) {
            visible = false;  // covered by a higher part of its own object
          }
        }
      }
      if (visible && sprite_contains(st.effector, embodiments[static_cast<size_t>(t)], pos))
        visible = false;
      out.vis(p, t) = visible ? 1 : 0;
    }
  }
  return out;
}

TrackSet oracle_tracks(const std::vector<WorldState>& states, const PointSet& points,
                       Embodiment embodiment, const SimConfig& cfg) {
  return oracle_tracks(states, points,
                       std::vector<Embodiment>(states.size(), embodiment), cfg);
}

}  // namespace genact::worldsim
