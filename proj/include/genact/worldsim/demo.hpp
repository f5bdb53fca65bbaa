#pragma once

#include "genact/taskbank/types.hpp"
#include "genact/worldsim/types.hpp"

namespace genact::worldsim {

struct DemoResult {
  std::vector<WorldState> states;  // length = actions + 1
  Video video;                     // one frame per state
  std::vector<ContinuousAction> actions;
};

// Whether the scripted controller can demonstrate the task from this state.
bool demonstrable(const taskbank::TaskSpec& task, const WorldState& state, const SimConfig& cfg);

// Waypoint-following proportional controller. The terminal action has
// terminate=true and the terminal state satisfies the task's success
// predicate; throws DemoFailure if that is not reached in max_demo_steps.
// Action sequences are independent of the rendering embodiment.
DemoResult scripted_demo(const taskbank::TaskSpec& task, const WorldState& state,
                         Embodiment embodiment, const SimConfig& cfg);

// Success predicate evaluation lives here so both the demo controller and the
// task bank share one implementation.
bool evaluate_predicate(const taskbank::SuccessPredicate& pred, const WorldState& state,
                        const SimConfig& cfg);

}  // namespace genact::worldsim
