#pragma once

#include <string>
#include <vector>

#include "genact/worldsim/types.hpp"

namespace genact::taskbank {

enum class GenLevel { MG, G, OTG, MTG };
enum class Split { train, eval };
enum class MotionType { push, pick_place, open_articulated, close_articulated, wipe, press };
enum class PredicateKind { proximity, articulation_above, articulation_below, region_cleared };

const char* level_name(GenLevel l);
GenLevel level_from_name(const std::string& s);
const char* motion_name(MotionType m);
MotionType motion_from_name(const std::string& s);
const char* predicate_kind_name(PredicateKind k);
PredicateKind predicate_kind_from_name(const std::string& s);

struct ObjectTemplate {
  std::string id;
  worldsim::ShapeCategory shape = worldsim::ShapeCategory::circle;
  std::string color_name = "red";
  double scale = 0.05;
  double articulation0 = 0.0;
  worldsim::Vec2 axis{1.0, 0.0};
};

struct SuccessPredicate {
  std::string id;
  PredicateKind kind = PredicateKind::proximity;
  std::string target_id;  // object being judged
  std::string goal_id;    // proximity goal object ("" when goal_point used)
  worldsim::Vec2 goal_point;
  bool use_goal_point = false;
  // For articulated goals: "slide" targets the moving tray (stow-in-drawer),
  // "center" targets the base opening (put-inside).
  std::string goal_anchor = "slide";
  double threshold = 0.05;  // strictly positive
};

struct TaskSpec {
  std::string id;
  std::string language;         // imperative form, the task's opaque key text
  std::string language_gerund;  // prompt payload, e.g. "opening the drawer"
  MotionType motion = MotionType::push;
  std::vector<ObjectTemplate> objects;  // target objects, instantiated at reset
  std::string target_id;                // manipulated object
  std::string goal_id;                  // goal object ("" for point goals / none)
  std::string success_id;               // registered predicate id
  SuccessPredicate success;             // resolved copy, filled at registration
  int distractor_count = 0;
  GenLevel level = GenLevel::MG;
  std::vector<ObjectTemplate> distractor_pool;  // shapes/colors legal as distractors
};

struct ActivitySpec {
  std::string id;
  std::string name;
  std::vector<std::string> stages;             // task ids, length 3 in the bank
  std::vector<ObjectTemplate> scene_objects;   // union scene for the whole activity
};

}  // namespace genact::taskbank
