#pragma once

#include "genact/taskbank/types.hpp"
#include "genact/worldsim/types.hpp"

namespace genact::worldsim {

// Samples an initial state for a task: its target objects plus
// `distractor_count` non-overlapping distractors, effector at home.
WorldState reset(const taskbank::TaskSpec& task, uint64_t seed, const SimConfig& cfg);

// Scene built from an explicit object template list (used for activities).
WorldState reset_scene(const std::vector<taskbank::ObjectTemplate>& objects, uint64_t seed,
                       const SimConfig& cfg);

// One control tick. Pure: returns the successor state. All inputs clamped.
WorldState step(const WorldState& state, const ContinuousAction& action, const SimConfig& cfg);

ObjectSpec instantiate(const taskbank::ObjectTemplate& tpl);

}  // namespace genact::worldsim
