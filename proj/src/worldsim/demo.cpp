#include "genact/worldsim/demo.hpp"

#include <algorithm>
#include <cmath>

#include "genact/core/error.hpp"
#include "genact/worldsim/render.hpp"
#include "genact/worldsim/world.hpp"

namespace genact::worldsim {
namespace {

using taskbank::MotionType;
using taskbank::PredicateKind;
using taskbank::SuccessPredicate;
using taskbank::TaskSpec;

double clampd(double v, double lo, double hi) { return v < lo ? lo : (v > hi ? hi : v); }

Vec2 toward(const Vec2& from, const Vec2& to, double max_step) {
  return {clampd(to.x - from.x, -max_step, max_step), clampd(to.y - from.y, -max_step, max_step)};
}

Vec2 predicate_goal_point(const SuccessPredicate& pred, const WorldState& state,
                          const SimConfig& cfg) {
  if (pred.use_goal_point) return pred.goal_point;
  const ObjectSpec* goal = state.find(pred.goal_id);
  if (!goal) raise(ErrorCode::PredicateError, "goal object missing: " + pred.goal_id);
  if (is_articulated(goal->shape) && pred.goal_anchor == "slide")
    return slide_anchor(*goal, cfg.travel);
  return goal->pose;
}

// The demo driver: emits one action per tick and advances the state, keeping
// a simple phase machine per motion type.
class Controller {
 public:
  Controller(const TaskSpec& task, const SuccessPredicate& pred, const SimConfig& cfg)
      : task_(task), pred_(pred), cfg_(cfg) {}

  // Returns the next action; sets done when the emitted action terminates.
  ContinuousAction next(const WorldState& s, bool* done) {
    *done = false;
    if (evaluate_predicate(pred_, s, cfg_) && phase_ != Phase::finishing) phase_ = Phase::succeed;
    switch (task_.motion) {
      case MotionType::push: return next_push(s, done);
      case MotionType::pick_place: return next_pick(s, done);
      case MotionType::open_articulated: return next_articulated(s, done, +1);
      case MotionType::close_articulated: return next_articulated(s, done, -1);
      case MotionType::wipe: return next_wipe(s, done);
      case MotionType::press: return next_press(s, done);
    }
    return terminate_action(done);
  }

 private:
  enum class Phase { approach, engage, act, succeed, finishing };

  ContinuousAction terminate_action(bool* done) {
    *done = true;
    return ContinuousAction{0.0, 0.0, GripperCmd::open, true};
  }

  ContinuousAction move_to(const WorldState& s, const Vec2& wp, GripperCmd grip) {
    Vec2 d = toward(s.effector.pose, wp, cfg_.max_delta);
    return ContinuousAction{d.x, d.y, grip, false};
  }

  bool arrived(const WorldState& s, const Vec2& wp) const {
    return dist(s.effector.pose, wp) <= cfg_.arrive_tol;
  }

  ContinuousAction next_push(const WorldState& s, bool* done) {
    if (phase_ == Phase::succeed) return terminate_action(done);
    const ObjectSpec* obj = s.find(task_.target_id);
    Vec2 goal = predicate_goal_point(pred_, s, cfg_);
    Vec2 dir = (goal - obj->pose).normalized();
    Vec2 standoff = obj->pose - dir * (cfg_.push_radius + 0.015);
    if (phase_ == Phase::approach) {
      if (arrived(s, standoff)) {
        phase_ = Phase::act;
        return ContinuousAction{0.0, 0.0, GripperCmd::close, false};
      }
      return move_to(s, standoff, GripperCmd::open);
    }
    // pushing: march the (closed, empty) gripper toward a point just behind
    // the object center; the contact rule keeps the object push_radius ahead,
    // so the effector never crosses the center and the push stays aligned.
    Vec2 to_obj = (obj->pose - s.effector.pose).normalized();
    if (to_obj.dot(dir) < 0.3) {
      // lost alignment; detach and re-approach
      phase_ = Phase::approach;
      return ContinuousAction{0.0, 0.0, GripperCmd::open, false};
    }
    return move_to(s, obj->pose - dir * (cfg_.push_radius * 0.2), GripperCmd::close);
  }

  ContinuousAction next_pick(const WorldState& s, bool* done) {
    const ObjectSpec* obj = s.find(task_.target_id);
    Vec2 goal = predicate_goal_point(pred_, s, cfg_);
    switch (phase_) {
      case Phase::approach:
        if (arrived(s, obj->pose)) {
          phase_ = Phase::engage;
          return ContinuousAction{0.0, 0.0, GripperCmd::close, false};
        }
        return move_to(s, obj->pose, GripperCmd::open);
      case Phase::engage:
      case Phase::act: {
        phase_ = Phase::act;
        if (dist(obj->pose, goal) <= std::max(pred_.threshold * 0.5, 0.01)) {
          phase_ = Phase::succeed;
          return ContinuousAction{0.0, 0.0, GripperCmd::open, false};
        }
        Vec2 carry_goal = goal - s.grasp_offset;
        return move_to(s, carry_goal, GripperCmd::close);
      }
      case Phase::succeed:
      case Phase::finishing:
        return terminate_action(done);
    }
    return terminate_action(done);
  }

  ContinuousAction next_articulated(const WorldState& s, bool* done, int sense) {
    const ObjectSpec* obj = s.find(task_.target_id);
    if (phase_ == Phase::succeed) {
      return terminate_action(done);
    }
    Vec2 handle = handle_position(*obj, cfg_.travel);
    if (phase_ == Phase::approach) {
      if (arrived(s, handle)) {
        phase_ = Phase::act;
        return ContinuousAction{0.0, 0.0, GripperCmd::close, false};
      }
      return move_to(s, handle, GripperCmd::open);
    }
    // drag along the axis until the predicate flips
    Vec2 d = obj->axis * (sense * cfg_.max_delta);
    return ContinuousAction{d.x, d.y, GripperCmd::close, false};
  }

  ContinuousAction next_wipe(const WorldState& s, bool* done) {
    const ObjectSpec* cloth = s.find(task_.target_id);
    if (phase_ == Phase::succeed) return terminate_action(done);
    if (phase_ == Phase::approach) {
      if (arrived(s, cloth->pose)) {
        phase_ = Phase::act;
        return ContinuousAction{0.0, 0.0, GripperCmd::close, false};
      }
      return move_to(s, cloth->pose, GripperCmd::open);
    }
    // visit the first uncleaned smudge (stable object order)
    for (const auto& o : s.objects) {
      if (o.shape == ShapeCategory::smudge && o.articulation < 1.0) {
        Vec2 carry_goal = o.pose - s.grasp_offset;
        return move_to(s, carry_goal, GripperCmd::close);
      }
    }
    phase_ = Phase::succeed;
    return ContinuousAction{0.0, 0.0, GripperCmd::open, false};
  }

  ContinuousAction next_press(const WorldState& s, bool* done) {
    const ObjectSpec* btn = s.find(task_.target_id);
    if (phase_ == Phase::succeed) return terminate_action(done);
    if (phase_ == Phase::approach) {
      if (arrived(s, btn->pose)) {
        phase_ = Phase::act;
        return ContinuousAction{0.0, 0.0, GripperCmd::close, false};
      }
      return move_to(s, btn->pose, GripperCmd::open);
    }
    return ContinuousAction{0.0, 0.0, GripperCmd::open, false};
  }

  const TaskSpec& task_;
  const SuccessPredicate& pred_;
  const SimConfig& cfg_;
  Phase phase_ = Phase::approach;
};

}  // namespace

bool evaluate_predicate(const SuccessPredicate& pred, const WorldState& state,
                        const SimConfig& cfg) {
  switch (pred.kind) {
    case PredicateKind::proximity: {
      const ObjectSpec* target = state.find(pred.target_id);
      if (!target) raise(ErrorCode::PredicateError, "target missing: " + pred.target_id);
      Vec2 goal = predicate_goal_point(pred, state, cfg);
      return dist(target->pose, goal) < pred.threshold;  // strict
    }
    case PredicateKind::articulation_above: {
      const ObjectSpec* target = state.find(pred.target_id);
      if (!target) raise(ErrorCode::PredicateError, "target missing: " + pred.target_id);
      return target->articulation >= pred.threshold;
    }
    case PredicateKind::articulation_below: {
      const ObjectSpec* target = state.find(pred.target_id);
      if (!target) raise(ErrorCode::PredicateError, "target missing: " + pred.target_id);
      return target->articulation <= pred.threshold;
    }
    case PredicateKind::region_cleared: {
      bool any = false;
      for (const auto& o : state.objects) {
        if (o.shape != ShapeCategory::smudge) continue;
        any = true;
        if (o.articulation < pred.threshold) return false;
      }
      return any;
    }
  }
  return false;
}

bool demonstrable(const taskbank::TaskSpec& task, const WorldState& state, const SimConfig& cfg) {
  const ObjectSpec* target = state.find(task.target_id);
  if (!target) return false;
  switch (task.motion) {
    case MotionType::push:
    case MotionType::pick_place:
      return !task.goal_id.empty() ? state.find(task.goal_id) != nullptr : true;
    case MotionType::open_articulated:
      return is_articulated(target->shape) && target->articulation < 1.0;
    case MotionType::close_articulated:
      return is_articulated(target->shape) && target->articulation > 0.0;
    case MotionType::wipe: {
      if (target->shape != ShapeCategory::cloth) return false;
      for (const auto& o : state.objects)
        if (o.shape == ShapeCategory::smudge) return true;
      return false;
    }
    case MotionType::press:
      return target->shape == ShapeCategory::button;
  }
  (void)cfg;
  return false;
}

DemoResult scripted_demo(const taskbank::TaskSpec& task, const WorldState& state,
                         Embodiment embodiment, const SimConfig& cfg) {
  if (!demonstrable(task, state, cfg))
    raise(ErrorCode::DemoFailure, "task " + task.id + " not demonstrable from state");

  DemoResult out;
  out.states.push_back(state);
  out.video.push_back(render(state, embodiment, cfg));

  Controller ctl(task, task.success, cfg);
  WorldState s = state;
  for (int t = 0; t < cfg.max_demo_steps; ++t) {
    bool done = false;
    ContinuousAction a = ctl.next(s, &done);
    s = step(s, a, cfg);
    out.actions.push_back(a);
    out.states.push_back(s);
    out.video.push_back(render(s, embodiment, cfg));
    if (done) {
      if (!evaluate_predicate(task.success, s, cfg))
        raise(ErrorCode::DemoFailure, "terminated without success on " + task.id);
      return out;
    }
  }
  raise(ErrorCode::DemoFailure, "demo exceeded max_demo_steps on " + task.id);
}

}  // namespace genact::worldsim
