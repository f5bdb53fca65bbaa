#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace genact::worldsim {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  double dot(const Vec2& o) const { return x * o.x + y * o.y; }
  double norm() const { return std::sqrt(x * x + y * y); }
  Vec2 normalized() const {
    double n = norm();
    return n > 0 ? Vec2{x / n, y / n} : Vec2{1.0, 0.0};
  }
};

inline double dist(const Vec2& a, const Vec2& b) { return (a - b).norm(); }
inline Vec2 clamp01(const Vec2& v) {
  auto c = [](double x) { return x < 0.0 ? 0.0 : (x > 1.0 ? 1.0 : x); };
  return {c(v.x), c(v.y)};
}

struct Color {
  float r = 0.f, g = 0.f, b = 0.f;
  bool operator==(const Color&) const = default;
};

enum class ShapeCategory {
  circle,
  square,
  triangle,
  star,
  hexagon,
  ring,
  cross,
  drawer,
  lid,
  microwave,
  cloth,
  smudge,
  button,
};

const char* shape_name(ShapeCategory s);
ShapeCategory shape_from_name(const std::string& name);

// Rigid shapes can be grasped and pushed; articulated shapes expose a handle
// that drives a slide along `axis`; specials have bespoke interactions.
bool is_articulated(ShapeCategory s);
bool is_graspable(ShapeCategory s);

struct ObjectSpec {
  std::string id;
  ShapeCategory shape = ShapeCategory::circle;
  std::string color_name;
  Color color;
  Vec2 pose;
  double scale = 0.05;          // in [0.02, 0.2]
  double articulation = 0.0;    // [0,1]; slides, pressed buttons, cleared smudges
  Vec2 axis{1.0, 0.0};          // articulation axis for drawer/lid/microwave
};

struct EffectorState {
  Vec2 pose;
  bool gripper_closed = false;
};

struct WorldState {
  std::vector<ObjectSpec> objects;
  EffectorState effector;
  int step_index = 0;
  uint64_t rng_state = 0;
  double light = 1.0;        // per-episode lighting factor (1.0 unless jitter on)
  int grasped = -1;          // index of grasp-bound rigid object, or -1
  Vec2 grasp_offset;         // object pose minus effector pose at bind time
  int handle_bound = -1;     // index of handle-bound articulated object, or -1

  const ObjectSpec* find(const std::string& id) const {
    for (const auto& o : objects)
      if (o.id == id) return &o;
    return nullptr;
  }
  ObjectSpec* find(const std::string& id) {
    for (auto& o : objects)
      if (o.id == id) return &o;
    return nullptr;
  }
};

enum class GripperCmd { open, close };

struct ContinuousAction {
  double dx = 0.0;
  double dy = 0.0;  // workspace units per step, clamped to +-max_delta
  GripperCmd gripper = GripperCmd::open;
  bool terminate = false;
};

struct Frame {
  int h = 0, w = 0;
  std::vector<float> px;  // h*w*3, row-major, values in [0,1]

  Frame() = default;
  Frame(int height, int width) : h(height), w(width), px(static_cast<size_t>(height) * width * 3, 0.f) {}

  float& at(int y, int x, int c) { return px[(static_cast<size_t>(y) * w + x) * 3 + c]; }
  float at(int y, int x, int c) const { return px[(static_cast<size_t>(y) * w + x) * 3 + c]; }
  bool operator==(const Frame& o) const { return h == o.h && w == o.w && px == o.px; }
};

using Video = std::vector<Frame>;

enum class Embodiment { none, human_hand, robot_gripper };

struct SimConfig {
  int image_size = 64;
  double max_delta = 0.05;
  double grasp_radius = 0.03;
  double push_radius = 0.05;
  double travel = 0.25;        // full articulation travel length
  double clear_radius = 0.05;  // cloth-to-smudge wipe distance
  double arrive_tol = 0.004;
  int max_demo_steps = 120;
  bool lighting_jitter = false;
  Vec2 home{0.5, 0.95};
};

// Position of the handle of an articulated object in world coordinates.
Vec2 handle_position(const ObjectSpec& o, double travel);
// Anchor of the moving part (slide) for a given articulation.
Vec2 slide_anchor(const ObjectSpec& o, double travel);

}  // namespace genact::worldsim
