#pragma once

#include "genact/worldsim/types.hpp"

namespace genact::worldsim {

// Named object palette. Sprite palettes are reserved and never appear here.
Color color_from_name(const std::string& name);
const std::vector<std::string>& palette_names();

Color background_color();
// The robot sprite palette, used by the embodiment-purity checks.
std::vector<Color> robot_sprite_palette();
std::vector<Color> human_sprite_palette();

// Deterministic rasterization; objects in list order (later on top), sprite
// topmost. `none` omits the sprite.
Frame render(const WorldState& state, Embodiment embodiment, const SimConfig& cfg);

// Containment tests shared by the renderer and the track oracle.
// part: 0 = static body (base), 1 = moving part (slide), 2 = handle.
bool object_contains(const ObjectSpec& o, const Vec2& p, double travel, int* part = nullptr);
bool object_rendered(const ObjectSpec& o);  // smudges vanish once cleared
bool sprite_contains(const EffectorState& eff, Embodiment embodiment, const Vec2& p);

}  // namespace genact::worldsim
