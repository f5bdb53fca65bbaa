#include "genact/worldsim/render.hpp"

#include <cmath>
#include <map>

#include "genact/core/error.hpp"

namespace genact::worldsim {
namespace {

// Object palette. Sprite colors are deliberately outside this table.
const std::map<std::string, Color>& palette() {
  static const std::map<std::string, Color> p = {
      {"red", {0.85f, 0.12f, 0.12f}},     {"green", {0.12f, 0.70f, 0.20f}},
      {"blue", {0.15f, 0.30f, 0.85f}},    {"yellow", {0.90f, 0.85f, 0.15f}},
      {"purple", {0.55f, 0.20f, 0.70f}},  {"orange", {0.95f, 0.55f, 0.10f}},
      {"cyan", {0.10f, 0.75f, 0.80f}},    {"magenta", {0.85f, 0.20f, 0.60f}},
      {"brown", {0.55f, 0.38f, 0.20f}},   {"gray", {0.50f, 0.50f, 0.50f}},
  };
  return p;
}

constexpr Color kBackground{0.92f, 0.92f, 0.92f};

// Sprite palettes; the purity tests assert generated videos never contain
// the robot colors.
constexpr Color kSteelLight{0.55f, 0.60f, 0.68f};
constexpr Color kSteelDark{0.30f, 0.34f, 0.40f};
constexpr Color kSkin{0.96f, 0.80f, 0.63f};
constexpr Color kSkinShade{0.72f, 0.55f, 0.40f};

bool in_rect(const Vec2& q, double hx, double hy) {
  return std::abs(q.x) <= hx && std::abs(q.y) <= hy;
}
bool in_disc(const Vec2& q, double r) { return q.x * q.x + q.y * q.y <= r * r; }
bool in_diamond(const Vec2& q, double s) { return std::abs(q.x) + std::abs(q.y) <= s; }

bool shape_contains_local(ShapeCategory shape, const Vec2& q, double s) {
  switch (shape) {
    case ShapeCategory::circle:
      return in_disc(q, s);
    case ShapeCategory::square:
      return in_rect(q, s * 0.9, s * 0.9);
    case ShapeCategory::triangle: {
      // upward-pointing: apex (0,-s), base y = +0.75 s
      if (q.y < -s || q.y > 0.75 * s) return false;
      double half_width = 0.95 * s * (q.y + s) / (1.75 * s);
      return std::abs(q.x) <= half_width;
    }
    case ShapeCategory::star:
      return in_rect(q, s * 0.45, s * 0.45) || in_diamond(q, s);
    case ShapeCategory::hexagon:
      return std::abs(q.y) <= 0.866 * s &&
             0.866 * std::abs(q.x) + 0.5 * std::abs(q.y) <= 0.866 * s;
    case ShapeCategory::ring:
      return in_disc(q, s) && !in_disc(q, s * 0.55);
    case ShapeCategory::cross:
      return (std::abs(q.x) <= 0.35 * s && std::abs(q.y) <= s) ||
             (std::abs(q.y) <= 0.35 * s && std::abs(q.x) <= s);
    case ShapeCategory::cloth:
      return in_rect(q, s, s * 0.8);
    case ShapeCategory::smudge:
      return in_disc(q, s);
    case ShapeCategory::button:
      return in_disc(q, s);
    default:
      return false;
  }
}

Color scale_color(Color c, double f) {
  auto cl = [](double v) { return static_cast<float>(v < 0 ? 0 : (v > 1 ? 1 : v)); };
  return {cl(c.r * f), cl(c.g * f), cl(c.b * f)};
}

Color mix(Color a, Color b, float t) {
  return {a.r + (b.r - a.r) * t, a.g + (b.g - a.g) * t, a.b + (b.b - a.b) * t};
}

}  // namespace

Color color_from_name(const std::string& name) {
  auto it = palette().find(name);
  if (it == palette().end()) raise(ErrorCode::InvalidInput, "unknown color: " + name);
  return it->second;
}

const std::vector<std::string>& palette_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [k, _] : palette()) v.push_back(k);
    return v;
  }();
  return names;
}

Color background_color() { return kBackground; }
std::vector<Color> robot_sprite_palette() { return {kSteelLight, kSteelDark}; }
std::vector<Color> human_sprite_palette() { return {kSkin, kSkinShade}; }

bool object_rendered(const ObjectSpec& o) {
  return !(o.shape == ShapeCategory::smudge && o.articulation >= 0.5);
}

bool object_contains(const ObjectSpec& o, const Vec2& p, double travel, int* part) {
  if (is_articulated(o.shape)) {
    // handle knob above slide above base
    Vec2 anchor = slide_anchor(o, travel);
    Vec2 handle = handle_position(o, travel);
    if (in_disc(p - handle, o.scale * 0.22)) {
      if (part) *part = 2;
      return true;
    }
    double sx = o.shape == ShapeCategory::microwave ? o.scale * 0.95 : o.scale * 0.85;
    double sy = o.shape == ShapeCategory::drawer ? o.scale * 0.55 : o.scale * 0.40;
    if (in_rect(p - anchor, sx, sy)) {
      if (part) *part = 1;
      return true;
    }
    if (in_rect(p - o.pose, o.scale, o.scale * 0.7)) {
      if (part) *part = 0;
      return true;
    }
    return false;
  }
  if (shape_contains_local(o.shape, p - o.pose, o.scale)) {
    if (part) *part = 0;
    return true;
  }
  return false;
}

bool sprite_contains(const EffectorState& eff, Embodiment embodiment, const Vec2& p) {
  if (embodiment == Embodiment::none) return false;
  Vec2 q = p - eff.pose;
  if (embodiment == Embodiment::robot_gripper) {
    double sep = eff.gripper_closed ? 0.010 : 0.022;
    if (in_rect(q - Vec2{-sep, 0.0}, 0.007, 0.028)) return true;
    if (in_rect(q - Vec2{sep, 0.0}, 0.007, 0.028)) return true;
    if (in_rect(q - Vec2{0.0, -0.030}, 0.030, 0.008)) return true;  // crossbar
    return false;
  }
  // human hand: palm disc plus finger nubs; fist when closed
  if (eff.gripper_closed) {
    if (in_disc(q, 0.030)) return true;
    if (in_disc(q - Vec2{0.0, -0.024}, 0.016)) return true;
    return false;
  }
  if (in_disc(q, 0.026)) return true;
  if (in_disc(q - Vec2{-0.020, -0.020}, 0.010)) return true;
  if (in_disc(q - Vec2{0.0, -0.027}, 0.010)) return true;
  if (in_disc(q - Vec2{0.020, -0.020}, 0.010)) return true;
  return false;
}

namespace {

// Color of the sprite at point p, assuming containment was already checked
// piecewise. Returns the color of the topmost sprite primitive.
bool sprite_color(const EffectorState& eff, Embodiment embodiment, const Vec2& p, Color* out) {
  if (embodiment == Embodiment::none) return false;
  Vec2 q = p - eff.pose;
  if (embodiment == Embodiment::robot_gripper) {
    double sep = eff.gripper_closed ? 0.010 : 0.022;
    if (in_rect(q - Vec2{-sep, 0.0}, 0.007, 0.028) || in_rect(q - Vec2{sep, 0.0}, 0.007, 0.028)) {
      *out = kSteelLight;
      return true;
    }
    if (in_rect(q - Vec2{0.0, -0.030}, 0.030, 0.008)) {
      *out = kSteelDark;
      return true;
    }
    return false;
  }
  if (eff.gripper_closed) {
    if (in_disc(q, 0.030)) {
      *out = kSkin;
      return true;
    }
    if (in_disc(q - Vec2{0.0, -0.024}, 0.016)) {
      *out = kSkinShade;
      return true;
    }
    return false;
  }
  if (in_disc(q, 0.026)) {
    *out = kSkin;
    return true;
  }
  if (in_disc(q - Vec2{-0.020, -0.020}, 0.010) || in_disc(q - Vec2{0.0, -0.027}, 0.010) ||
      in_disc(q - Vec2{0.020, -0.020}, 0.010)) {
    *out = kSkinShade;
    return true;
  }
  return false;
}

Color object_color_at(const ObjectSpec& o, int part) {
  switch (o.shape) {
    case ShapeCategory::smudge:
      return mix(o.color, kBackground, 0.45f);
    case ShapeCategory::button:
      return o.articulation >= 0.5 ? scale_color(o.color, 0.55) : o.color;
    default:
      break;
  }
  if (is_articulated(o.shape)) {
    if (part == 2) return scale_color(o.color, 0.45);  // handle knob
    if (part == 1) return o.color;                     // slide / door
    return scale_color(o.color, 0.65);                 // base
  }
  return o.color;
}

}  // namespace

Frame render(const WorldState& state, Embodiment embodiment, const SimConfig& cfg) {
  const int n = cfg.image_size;
  Frame f(n, n);
  const float light = static_cast<float>(state.light);
  for (int y = 0; y < n; ++y) {
    for (int x = 0; x < n; ++x) {
      Vec2 p{(x + 0.5) / n, (y + 0.5) / n};
      Color c = kBackground;
      bool hit = false;
      Color sc;
      if (sprite_color(state.effector, embodiment, p, &sc)) {
        c = sc;
        hit = true;
      }
      if (!hit) {
        for (int i = static_cast<int>(state.objects.size()) - 1; i >= 0; --i) {
          const auto& o = state.objects[static_cast<size_t>(i)];
          if (!object_rendered(o)) continue;
          int part = 0;
          if (object_contains(o, p, cfg.travel, &part)) {
            c = object_color_at(o, part);
            hit = true;
            break;
          }
        }
      }
      auto cl = [light](float v) {
        float s = v * light;
        return s < 0.f ? 0.f : (s > 1.f ? 1.f : s);
      };
      f.at(y, x, 0) = cl(c.r);
      f.at(y, x, 1) = cl(c.g);
      f.at(y, x, 2) = cl(c.b);
    }
  }
  return f;
}

}  // namespace genact::worldsim
