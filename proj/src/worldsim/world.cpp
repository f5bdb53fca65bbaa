#include "genact/worldsim/world.hpp"

#include <algorithm>
#include <cmath>

#include "genact/core/error.hpp"
#include "genact/core/rng.hpp"
#include "genact/worldsim/render.hpp"

namespace genact::worldsim {
namespace {

double clamp(double v, double lo, double hi) { return v < lo ? lo : (v > hi ? hi : v); }

// Articulated objects sweep their slide and handle along the axis; the
// bounding circle of that sweep drives the separation checks, and the pose
// region shrinks along the axis so the handle never leaves the workspace.
double swept_half_span(const ObjectSpec& o, const SimConfig& cfg) {
  return is_articulated(o.shape) ? (cfg.travel + 1.32 * o.scale) * 0.5 : 0.0;
}

Vec2 effective_center(const ObjectSpec& o, const Vec2& pose, const SimConfig& cfg) {
  return pose + o.axis * swept_half_span(o, cfg);
}

double effective_radius(const ObjectSpec& o, const SimConfig& cfg) {
  return o.scale + swept_half_span(o, cfg);
}

void place_objects(std::vector<ObjectSpec>& objects, Rng& rng, const SimConfig& cfg) {
  const double kMaxY = 0.80;  // keep clear of the effector home row

  // larger footprints first (stable on ties); vector order stays untouched
  std::vector<size_t> order(objects.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return effective_radius(objects[a], cfg) > effective_radius(objects[b], cfg);
  });

  std::vector<bool> placed(objects.size(), false);
  for (size_t oi : order) {
    auto& o = objects[oi];
    double m = o.scale + 0.02;
    double span = 2.0 * swept_half_span(o, cfg);
    double lo_x = m + std::max(0.0, -o.axis.x) * span;
    double hi_x = 1.0 - m - std::max(0.0, o.axis.x) * span;
    double lo_y = m + std::max(0.0, -o.axis.y) * span;
    double hi_y = std::min(kMaxY - o.scale, 1.0 - m - std::max(0.0, o.axis.y) * span);
    bool ok_place = false;
    for (int attempt = 0; attempt < 1000 && !ok_place; ++attempt) {
      Vec2 p{rng.uniform(lo_x, hi_x), rng.uniform(lo_y, hi_y)};
      bool ok = true;
      for (size_t j = 0; j < objects.size(); ++j) {
        if (!placed[j]) continue;
        double min_sep =
            effective_radius(o, cfg) + effective_radius(objects[j], cfg) + 0.02;
        if (dist(effective_center(o, p, cfg),
                 effective_center(objects[j], objects[j].pose, cfg)) <= min_sep) {
          ok = false;
          break;
        }
      }
      if (ok) {
        o.pose = p;
        placed[oi] = true;
        ok_place = true;
      }
    }
    if (!ok_place) raise(ErrorCode::PlacementFailure, "no placement for object " + o.id);
  }
}

}  // namespace

ObjectSpec instantiate(const taskbank::ObjectTemplate& tpl) {
  ObjectSpec o;
  o.id = tpl.id;
  o.shape = tpl.shape;
  o.color_name = tpl.color_name;
  o.color = color_from_name(tpl.color_name);
  o.scale = tpl.scale;
  o.articulation = tpl.articulation0;
  o.axis = tpl.axis.normalized();
  return o;
}

WorldState reset_scene(const std::vector<taskbank::ObjectTemplate>& templates, uint64_t seed,
                       const SimConfig& cfg) {
  WorldState s;
  s.rng_state = seed;
  for (const auto& tpl : templates) s.objects.push_back(instantiate(tpl));
  Rng rng(derive_seed(seed, "reset"));
  place_objects(s.objects, rng, cfg);
  s.effector.pose = cfg.home;
  s.effector.gripper_closed = false;
  if (cfg.lighting_jitter) s.light = rng.uniform(0.95, 1.05);
  return s;
}

WorldState reset(const taskbank::TaskSpec& task, uint64_t seed, const SimConfig& cfg) {
  std::vector<taskbank::ObjectTemplate> templates = task.objects;
  uint64_t scene_seed = derive_seed(seed, "task:" + task.id);
  if (task.distractor_count > 0) {
    if (task.distractor_pool.empty())
      raise(ErrorCode::InvalidInput, "task " + task.id + " has no distractor pool");
    Rng rng(derive_seed(scene_seed, "distractors"));
    for (int i = 0; i < task.distractor_count; ++i) {
      auto tpl = task.distractor_pool[static_cast<size_t>(
          rng.uniform_int(0, static_cast<int>(task.distractor_pool.size()) - 1))];
      tpl.id = "distractor" + std::to_string(i);
      templates.push_back(tpl);
    }
  }
  return reset_scene(templates, scene_seed, cfg);
}

WorldState step(const WorldState& state, const ContinuousAction& action, const SimConfig& cfg) {
  WorldState s = state;
  s.step_index += 1;

  Vec2 delta{clamp(action.dx, -cfg.max_delta, cfg.max_delta),
             clamp(action.dy, -cfg.max_delta, cfg.max_delta)};

  // Effector motion. While handle-bound, motion is constrained to the
  // articulation axis and limited by the remaining travel.
  if (s.handle_bound >= 0) {
    auto& obj = s.objects[static_cast<size_t>(s.handle_bound)];
    double along = delta.dot(obj.axis);
    double new_art = clamp(obj.articulation + along / cfg.travel, 0.0, 1.0);
    double moved = (new_art - obj.articulation) * cfg.travel;
    obj.articulation = new_art;
    s.effector.pose = clamp01(s.effector.pose + obj.axis * moved);
  } else {
    s.effector.pose = clamp01(s.effector.pose + delta);
  }

  // Gripper transitions.
  if (action.gripper == GripperCmd::open) {
    s.effector.gripper_closed = false;
    s.grasped = -1;
    s.handle_bound = -1;
  } else if (!s.effector.gripper_closed) {
    s.effector.gripper_closed = true;
    // Bind the nearest candidate within grasp_radius: rigid object centers,
    // articulated handles, or buttons (press, no binding).
    int best = -1;
    int best_kind = 0;  // 1 rigid, 2 handle, 3 button
    double best_d = cfg.grasp_radius;
    for (size_t i = 0; i < s.objects.size(); ++i) {
      const auto& o = s.objects[i];
      double d;
      int kind;
      if (is_graspable(o.shape)) {
        d = dist(s.effector.pose, o.pose);
        kind = 1;
      } else if (is_articulated(o.shape)) {
        d = dist(s.effector.pose, handle_position(o, cfg.travel));
        kind = 2;
      } else if (o.shape == ShapeCategory::button) {
        d = dist(s.effector.pose, o.pose);
        kind = 3;
      } else {
        continue;
      }
      if (d <= best_d) {
        best_d = d;
        best = static_cast<int>(i);
        best_kind = kind;
      }
    }
    if (best_kind == 1) {
      s.grasped = best;
      s.grasp_offset = s.objects[static_cast<size_t>(best)].pose - s.effector.pose;
    } else if (best_kind == 2) {
      s.handle_bound = best;
    } else if (best_kind == 3) {
      s.objects[static_cast<size_t>(best)].articulation = 1.0;
    }
  }

  // Grasp-bound object follows the effector.
  if (s.grasped >= 0)
    s.objects[static_cast<size_t>(s.grasped)].pose =
        clamp01(s.effector.pose + s.grasp_offset);

  // A closed empty gripper displaces nearby free rigid objects (pushing).
  // A gripper carrying an object or holding a handle does not push.
  if (s.effector.gripper_closed && s.grasped < 0 && s.handle_bound < 0) {
    for (size_t i = 0; i < s.objects.size(); ++i) {
      if (static_cast<int>(i) == s.grasped) continue;
      auto& o = s.objects[i];
      if (!is_graspable(o.shape)) continue;
      double d = dist(s.effector.pose, o.pose);
      if (d < cfg.push_radius) {
        Vec2 dir = d > 0 ? (o.pose - s.effector.pose).normalized() : Vec2{1.0, 0.0};
        o.pose = clamp01(s.effector.pose + dir * cfg.push_radius);
      }
    }
  }

  // A dragged cloth clears smudges it passes over.
  if (s.grasped >= 0 &&
      s.objects[static_cast<size_t>(s.grasped)].shape == ShapeCategory::cloth) {
    const Vec2 cloth_pose = s.objects[static_cast<size_t>(s.grasped)].pose;
    for (auto& o : s.objects)
      if (o.shape == ShapeCategory::smudge && dist(cloth_pose, o.pose) <= cfg.clear_radius)
        o.articulation = 1.0;
  }

  for (auto& o : s.objects) {
    o.pose = clamp01(o.pose);
    o.articulation = clamp(o.articulation, 0.0, 1.0);
  }
  return s;
}

}  // namespace genact::worldsim
