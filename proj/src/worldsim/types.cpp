#include "genact/worldsim/types.hpp"

#include "genact/core/error.hpp"

namespace genact::worldsim {

const char* shape_name(ShapeCategory s) {
  switch (s) {
    case ShapeCategory::circle: return "circle";
    case ShapeCategory::square: return "square";
    case ShapeCategory::triangle: return "triangle";
    case ShapeCategory::star: return "star";
    case ShapeCategory::hexagon: return "hexagon";
    case ShapeCategory::ring: return "ring";
    case ShapeCategory::cross: return "cross";
    case ShapeCategory::drawer: return "drawer";
    case ShapeCategory::lid: return "lid";
    case ShapeCategory::microwave: return "microwave";
    case ShapeCategory::cloth: return "cloth";
    case ShapeCategory::smudge: return "smudge";
    case ShapeCategory::button: return "button";
  }
  return "circle";
}

ShapeCategory shape_from_name(const std::string& name) {
  for (int i = 0; i <= static_cast<int>(ShapeCategory::button); ++i) {
    auto s = static_cast<ShapeCategory>(i);
    if (name == shape_name(s)) return s;
  }
  raise(ErrorCode::InvalidInput, "unknown shape category: " + name);
}

bool is_articulated(ShapeCategory s) {
  return s == ShapeCategory::drawer || s == ShapeCategory::lid || s == ShapeCategory::microwave;
}

bool is_graspable(ShapeCategory s) {
  switch (s) {
    case ShapeCategory::circle:
    case ShapeCategory::square:
    case ShapeCategory::triangle:
    case ShapeCategory::star:
    case ShapeCategory::hexagon:
    case ShapeCategory::ring:
    case ShapeCategory::cross:
    case ShapeCategory::cloth:
      return true;
    default:
      return false;
  }
}

Vec2 slide_anchor(const ObjectSpec& o, double travel) {
  return o.pose + o.axis * (o.articulation * travel);
}

Vec2 handle_position(const ObjectSpec& o, double travel) {
  return slide_anchor(o, travel) + o.axis * (o.scale * 1.1);
}

}  // namespace genact::worldsim
