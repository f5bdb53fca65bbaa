#include <doctest.h>

#include <algorithm>
#include <set>

#include "genact/core/error.hpp"
#include "genact/taskbank/registry.hpp"
#include "genact/worldsim/demo.hpp"
#include "genact/worldsim/world.hpp"

using namespace genact;
using namespace genact::taskbank;
using worldsim::SimConfig;
using worldsim::WorldState;

namespace {
const Registry& bank() {
  static Registry r = default_registry();
  return r;
}

std::set<std::string> to_set(const std::vector<std::string>& v) { return {v.begin(), v.end()}; }
}  // namespace

TEST_CASE("holdout soundness by enumeration") {
  auto train_shapes = to_set(bank().shape_set(Split::train));
  auto train_motions = to_set(bank().motion_set(Split::train));

  // OTG eval tasks use only shape categories absent from train
  for (const auto& t : bank().enumerate_tasks(GenLevel::OTG, Split::eval))
    for (const auto& o : t.objects)
      CHECK(train_shapes.count(worldsim::shape_name(o.shape)) == 0);

  // MTG eval: every motion absent from train
  for (const auto& t : bank().enumerate_tasks(GenLevel::MTG, Split::eval))
    CHECK(train_motions.count(motion_name(t.motion)) == 0);

  // G eval: seen shapes, unseen colors
  std::set<std::string> train_colors;
  for (const auto& t : bank().enumerate_tasks(GenLevel::MG, Split::train))
    for (const auto& o : t.objects) train_colors.insert(o.color_name);
  for (const auto& t : bank().enumerate_tasks(GenLevel::G, Split::eval))
    for (const auto& o : t.objects) {
      CHECK(train_shapes.count(worldsim::shape_name(o.shape)) == 1);
      CHECK(train_colors.count(o.color_name) == 0);
    }

  // (MG, train) and (OTG, eval) target shape categories are disjoint
  std::set<std::string> otg_shapes;
  for (const auto& t : bank().enumerate_tasks(GenLevel::OTG, Split::eval))
    for (const auto& o : t.objects) otg_shapes.insert(worldsim::shape_name(o.shape));
  for (const auto& s : train_shapes) CHECK(otg_shapes.count(s) == 0);

  // empty filter raises ConfigError
  bool threw = false;
  try {
    bank().enumerate_tasks(GenLevel::OTG, Split::train);
  } catch (const Error& e) {
    threw = e.code() == ErrorCode::ConfigError;
  }
  CHECK(threw);
}

TEST_CASE("check_success: thresholds and purity") {
  SimConfig cfg;
  const auto& open_drawer = bank().task("mtg_open_drawer");
  WorldState s = worldsim::reset(open_drawer, 3, cfg);
  // articulation 0.9 vs threshold 0.7 -> true
  s.find("drawer1")->articulation = 0.9;
  CHECK(bank().check_success(open_drawer, s, cfg));
  CHECK(bank().check_success(open_drawer, s, cfg));  // pure, repeatable

  // freshly reset nondegenerate task is unsatisfied
  for (const char* id : {"push_rc_bs", "place_rc_gt", "mtg_open_drawer", "mtg_press_button"}) {
    const auto& t = bank().task(id);
    WorldState fresh = worldsim::reset(t, 5, cfg);
    CHECK_FALSE(bank().check_success(t, fresh, cfg));
  }

  // proximity at exactly the threshold is false (strict inequality);
  // dyadic coordinates make the distance bit-exact
  const auto& push = bank().task("push_rc_bs");
  WorldState b = worldsim::reset(push, 7, cfg);
  auto* rc = b.find("rc");
  auto* bs = b.find("bs");
  SuccessPredicate boundary = push.success;
  boundary.threshold = 0.0625;
  bs->pose = {0.5, 0.5};
  rc->pose = {0.5625, 0.5};
  CHECK_FALSE(worldsim::evaluate_predicate(boundary, b, cfg));
  rc->pose.x = 0.5625 - 1e-9;
  CHECK(worldsim::evaluate_predicate(boundary, b, cfg));

  // missing object -> PredicateError
  WorldState empty;
  bool threw = false;
  try {
    bank().check_success(push, empty, cfg);
  } catch (const Error& e) {
    threw = e.code() == ErrorCode::PredicateError;
  }
  CHECK(threw);
}

TEST_CASE("decompose_activity: fixed decomposition table") {
  const auto& coffee = bank().activity("making_coffee");
  auto stages = bank().decompose_activity(coffee);
  REQUIRE(stages.size() == 3);
  CHECK(stages[0].language == "open the lid");
  CHECK(stages[1].language == "place the k-cup pod inside");
  CHECK(stages[2].language == "close the lid");

  const auto& stow = bank().activity("stowing_apple");
  auto stow_stages = bank().decompose_activity(stow);
  CHECK(stow_stages[0].language == "open the drawer");
  CHECK(stow_stages[1].language == "place the apple in the drawer");
  CHECK(stow_stages[2].language == "close the drawer");

  CHECK_THROWS_AS((void)bank().activity("no_such_activity"), Error);

  // singleton activity decomposes to itself
  Registry r = default_registry();
  ActivitySpec single;
  single.id = "single";
  single.name = "Single";
  single.stages = {"push_rc_bs"};
  r.add_activity(single);
  auto s = r.decompose_activity(r.activity("single"));
  REQUIRE(s.size() == 1);
  CHECK(s[0].id == "push_rc_bs");
}

TEST_CASE("decomposition totality: stages chain in the nominal world") {
  SimConfig cfg;
  for (const auto& aid : bank().activity_ids()) {
    const auto& act = bank().activity(aid);
    WorldState s = worldsim::reset_scene(act.scene_objects, 11, cfg);
    for (const auto& sid : act.stages) {
      const auto& task = bank().task(sid);
      REQUIRE_MESSAGE(worldsim::demonstrable(task, s, cfg), (aid + "/" + sid));
      auto demo = worldsim::scripted_demo(task, s, worldsim::Embodiment::robot_gripper, cfg);
      CHECK(bank().check_success(task, demo.states.back(), cfg));
      s = demo.states.back();
    }
  }
}

TEST_CASE("registry JSON round trip preserves enumerations") {
  Registry r = default_registry();
  auto j = r.to_json();
  Registry r2 = Registry::from_json(j);
  CHECK(r2.to_json() == j);
  CHECK(r2.task_ids() == r.task_ids());
  for (auto level : {GenLevel::MG, GenLevel::G, GenLevel::OTG, GenLevel::MTG}) {
    auto a = r.enumerate_tasks(level, Split::eval);
    auto b = r2.enumerate_tasks(level, Split::eval);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) CHECK(a[i].id == b[i].id);
  }
  // schema version is mandatory
  j.erase("schema_version");
  CHECK_THROWS_AS(Registry::from_json(j), Error);
}

TEST_CASE("task indices: train rows stable, unknown ids map to zero") {
  const auto& r = bank();
  std::set<int> seen;
  for (const auto& t : r.enumerate_tasks(GenLevel::MG, Split::train)) {
    int idx = r.task_index(t.id);
    CHECK(idx > 0);
    CHECK(seen.insert(idx).second);
  }
  for (const auto& t : r.enumerate_tasks(GenLevel::OTG, Split::eval))
    CHECK(r.task_index(t.id) == 0);
  CHECK(r.task_index("nonexistent") == 0);
}
