#include "genact/taskbank/registry.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "genact/core/error.hpp"
#include "genact/worldsim/demo.hpp"

namespace genact::taskbank {

using nlohmann::json;
using worldsim::ShapeCategory;

void Registry::add_predicate(SuccessPredicate pred) {
  if (pred.threshold <= 0.0) raise(ErrorCode::ConfigError, "predicate threshold must be > 0");
  predicates_[pred.id] = std::move(pred);
}

void Registry::add_task(TaskSpec task, Split split, bool enumerable) {
  if (task.language.empty()) raise(ErrorCode::ConfigError, "task language empty: " + task.id);
  auto it = predicates_.find(task.success_id);
  if (it == predicates_.end())
    raise(ErrorCode::ConfigError, "unregistered predicate: " + task.success_id);
  task.success = it->second;
  if (split == Split::train) {
    int idx = static_cast<int>(train_index_.size()) + 1;  // 0 reserved for unknown
    train_index_[task.id] = idx;
  }
  splits_[task.id] = split;
  enumerable_[task.id] = enumerable;
  task_order_.push_back(task.id);
  tasks_[task.id] = std::move(task);
}

void Registry::add_activity(ActivitySpec activity) {
  for (const auto& sid : activity.stages)
    if (!tasks_.count(sid)) raise(ErrorCode::ConfigError, "activity stage not a task: " + sid);
  activity_order_.push_back(activity.id);
  activities_[activity.id] = std::move(activity);
}

const TaskSpec& Registry::task(const std::string& id) const {
  auto it = tasks_.find(id);
  if (it == tasks_.end()) raise(ErrorCode::TaskNotFound, id);
  return it->second;
}

bool Registry::has_task(const std::string& id) const { return tasks_.count(id) > 0; }

std::vector<const TaskSpec*> Registry::find_by_gerund(const std::string& gerund) const {
  std::vector<const TaskSpec*> out;
  for (const auto& id : task_order_) {
    const TaskSpec& t = tasks_.at(id);
    if (t.language_gerund == gerund) out.push_back(&t);
  }
  return out;
}

Split Registry::split_of(const std::string& id) const {
  auto it = splits_.find(id);
  if (it == splits_.end()) raise(ErrorCode::TaskNotFound, id);
  return it->second;
}

std::vector<TaskSpec> Registry::enumerate_tasks(GenLevel level, Split split) const {
  std::vector<TaskSpec> out;
  for (const auto& id : task_ids()) {
    const TaskSpec& t = tasks_.at(id);
    if (!enumerable_.at(id)) continue;
    if (t.level != level) continue;
    auto sp = splits_.at(id);
    // MG tasks are the train tasks; evaluating MG means fresh configurations
    // of the same tasks, so both splits return them.
    bool keep = (level == GenLevel::MG) ? (sp == Split::train) : (sp == split);
    if (keep) out.push_back(t);
  }
  if (out.empty())
    raise(ErrorCode::ConfigError, std::string("no tasks for level ") + level_name(level) +
                                      (split == Split::train ? " train" : " eval"));
  return out;
}

bool Registry::check_success(const TaskSpec& task, const worldsim::WorldState& state,
                             const worldsim::SimConfig& cfg) const {
  auto it = predicates_.find(task.success_id);
  if (it == predicates_.end())
    raise(ErrorCode::PredicateError, "unregistered predicate: " + task.success_id);
  return worldsim::evaluate_predicate(it->second, state, cfg);
}

const ActivitySpec& Registry::activity(const std::string& id) const {
  auto it = activities_.find(id);
  if (it == activities_.end()) raise(ErrorCode::NotFound, "activity " + id);
  return it->second;
}

std::vector<TaskSpec> Registry::decompose_activity(const ActivitySpec& activity) const {
  std::vector<TaskSpec> out;
  for (const auto& sid : activity.stages) out.push_back(task(sid));
  return out;
}

std::vector<std::string> Registry::activity_ids() const { return activity_order_; }

int Registry::task_index(const std::string& id) const {
  auto it = train_index_.find(id);
  return it == train_index_.end() ? 0 : it->second;
}

int Registry::num_task_indices() const { return static_cast<int>(train_index_.size()) + 1; }

std::vector<std::string> Registry::shape_set(Split split) const {
  std::set<std::string> s;
  for (const auto& [id, t] : tasks_) {
    if (splits_.at(id) != split || !enumerable_.at(id)) continue;
    for (const auto& o : t.objects) s.insert(worldsim::shape_name(o.shape));
  }
  return {s.begin(), s.end()};
}

std::vector<std::string> Registry::motion_set(Split split) const {
  std::set<std::string> s;
  for (const auto& [id, t] : tasks_) {
    if (splits_.at(id) != split || !enumerable_.at(id)) continue;
    s.insert(motion_name(t.motion));
  }
  return {s.begin(), s.end()};
}

// ---- JSON ------------------------------------------------------------------

namespace {

json template_to_json(const ObjectTemplate& t) {
  return json{{"id", t.id},
              {"shape", worldsim::shape_name(t.shape)},
              {"color", t.color_name},
              {"scale", t.scale},
              {"articulation0", t.articulation0},
              {"axis", {t.axis.x, t.axis.y}}};
}

ObjectTemplate template_from_json(const json& j) {
  ObjectTemplate t;
  t.id = j.at("id").get<std::string>();
  t.shape = worldsim::shape_from_name(j.at("shape").get<std::string>());
  t.color_name = j.at("color").get<std::string>();
  t.scale = j.at("scale").get<double>();
  t.articulation0 = j.at("articulation0").get<double>();
  t.axis = {j.at("axis")[0].get<double>(), j.at("axis")[1].get<double>()};
  return t;
}

}  // namespace

json Registry::to_json() const {
  json j;
  j["schema_version"] = 1;
  json preds = json::array();
  for (const auto& [id, p] : predicates_) {
    preds.push_back(json{{"id", p.id},
                         {"kind", predicate_kind_name(p.kind)},
                         {"target", p.target_id},
                         {"goal", p.goal_id},
                         {"goal_point", {p.goal_point.x, p.goal_point.y}},
                         {"use_goal_point", p.use_goal_point},
                         {"goal_anchor", p.goal_anchor},
                         {"threshold", p.threshold}});
  }
  j["predicates"] = preds;
  json tasks = json::array();
  for (const auto& id : task_order_) {
    const TaskSpec& t = tasks_.at(id);
    json objs = json::array();
    for (const auto& o : t.objects) objs.push_back(template_to_json(o));
    json pool = json::array();
    for (const auto& o : t.distractor_pool) pool.push_back(template_to_json(o));
    tasks.push_back(json{{"id", t.id},
                         {"language", t.language},
                         {"gerund", t.language_gerund},
                         {"motion", motion_name(t.motion)},
                         {"objects", objs},
                         {"target", t.target_id},
                         {"goal", t.goal_id},
                         {"success", t.success_id},
                         {"distractor_count", t.distractor_count},
                         {"level", level_name(t.level)},
                         {"split", splits_.at(id) == Split::train ? "train" : "eval"},
                         {"enumerable", enumerable_.at(id)},
                         {"distractor_pool", pool}});
  }
  j["tasks"] = tasks;
  json acts = json::array();
  for (const auto& id : activity_order_) {
    const ActivitySpec& a = activities_.at(id);
    json scene = json::array();
    for (const auto& o : a.scene_objects) scene.push_back(template_to_json(o));
    acts.push_back(
        json{{"id", a.id}, {"name", a.name}, {"stages", a.stages}, {"scene", scene}});
  }
  j["activities"] = acts;
  return j;
}

Registry Registry::from_json(const json& j) {
  if (!j.contains("schema_version"))
    raise(ErrorCode::ConfigError, "task registry missing schema_version");
  if (j.at("schema_version").get<int>() != 1)
    raise(ErrorCode::ConfigError, "unsupported task registry schema version");
  Registry r;
  for (const auto& pj : j.at("predicates")) {
    SuccessPredicate p;
    p.id = pj.at("id").get<std::string>();
    p.kind = predicate_kind_from_name(pj.at("kind").get<std::string>());
    p.target_id = pj.at("target").get<std::string>();
    p.goal_id = pj.at("goal").get<std::string>();
    p.goal_point = {pj.at("goal_point")[0].get<double>(), pj.at("goal_point")[1].get<double>()};
    p.use_goal_point = pj.at("use_goal_point").get<bool>();
    p.goal_anchor = pj.at("goal_anchor").get<std::string>();
    p.threshold = pj.at("threshold").get<double>();
    r.add_predicate(std::move(p));
  }
  for (const auto& tj : j.at("tasks")) {
    TaskSpec t;
    t.id = tj.at("id").get<std::string>();
    t.language = tj.at("language").get<std::string>();
    t.language_gerund = tj.at("gerund").get<std::string>();
    t.motion = motion_from_name(tj.at("motion").get<std::string>());
    for (const auto& oj : tj.at("objects")) t.objects.push_back(template_from_json(oj));
    t.target_id = tj.at("target").get<std::string>();
    t.goal_id = tj.at("goal").get<std::string>();
    t.success_id = tj.at("success").get<std::string>();
    t.distractor_count = tj.at("distractor_count").get<int>();
    t.level = level_from_name(tj.at("level").get<std::string>());
    for (const auto& oj : tj.at("distractor_pool"))
      t.distractor_pool.push_back(template_from_json(oj));
    Split split = tj.at("split").get<std::string>() == "train" ? Split::train : Split::eval;
    r.add_task(std::move(t), split, tj.at("enumerable").get<bool>());
  }
  for (const auto& aj : j.at("activities")) {
    ActivitySpec a;
    a.id = aj.at("id").get<std::string>();
    a.name = aj.at("name").get<std::string>();
    for (const auto& s : aj.at("stages")) a.stages.push_back(s.get<std::string>());
    for (const auto& oj : aj.at("scene")) a.scene_objects.push_back(template_from_json(oj));
    r.add_activity(std::move(a));
  }
  return r;
}

void Registry::save(const std::string& path) const {
  std::ofstream out(path, std::ios::trunc);
  if (!out) raise(ErrorCode::IOError, "cannot write " + path);
  out << to_json().dump(2) << "\n";
}

Registry Registry::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorCode::IOError, "cannot read " + path);
  json j;
  in >> j;
  return from_json(j);
}

// ---- built-in bank ----------------------------------------------------------

namespace {

ObjectTemplate obj(const std::string& id, ShapeCategory shape, const std::string& color,
                   double scale = 0.05, double art0 = 0.0) {
  ObjectTemplate t;
  t.id = id;
  t.shape = shape;
  t.color_name = color;
  t.scale = scale;
  t.articulation0 = art0;
  return t;
}

struct ManipTaskArgs {
  std::string id, verb_imp, verb_ger;
  MotionType motion;
  ObjectTemplate target, goal, extra;
  GenLevel level;
};

void add_manip_task(Registry& r, const ManipTaskArgs& a, Split split) {
  SuccessPredicate p;
  p.id = a.id + "_done";
  p.kind = PredicateKind::proximity;
  p.target_id = a.target.id;
  p.goal_id = a.goal.id;
  p.threshold = 0.05;
  r.add_predicate(p);

  TaskSpec t;
  t.id = a.id;
  std::string tdesc = "the " + a.target.color_name + " " + worldsim::shape_name(a.target.shape);
  std::string gdesc = "the " + a.goal.color_name + " " + worldsim::shape_name(a.goal.shape);
  t.language = a.verb_imp + " " + tdesc + " onto " + gdesc;
  t.language_gerund = a.verb_ger + " " + tdesc + " onto " + gdesc;
  t.motion = a.motion;
  t.objects = {a.target, a.goal, a.extra};
  t.target_id = a.target.id;
  t.goal_id = a.goal.id;
  t.success_id = p.id;
  t.level = a.level;
  r.add_task(t, split);
}

}  // namespace

Registry default_registry() {
  Registry r;
  using SC = ShapeCategory;

  // Train scenes are deliberately reused across tasks so that pixels alone
  // cannot identify the task: the conditioning stream has to.
  auto rc = obj("rc", SC::circle, "red");
  auto bs = obj("bs", SC::square, "blue");
  auto gt = obj("gt", SC::triangle, "green");
  auto yc = obj("yc", SC::circle, "yellow");
  auto bt = obj("bt", SC::triangle, "blue");
  auto rs = obj("rs", SC::square, "red");

  auto manip = [&](const std::string& id, MotionType m, const ObjectTemplate& target,
                   const ObjectTemplate& goal, const ObjectTemplate& extra, GenLevel level,
                   Split split) {
    ManipTaskArgs a;
    a.id = id;
    a.verb_imp = (m == MotionType::push) ? "push" : "place";
    a.verb_ger = (m == MotionType::push) ? "pushing" : "placing";
    a.motion = m;
    a.target = target;
    a.goal = goal;
    a.extra = extra;
    a.level = level;
    add_manip_task(r, a, split);
  };

  // MG / train
  manip("push_rc_bs", MotionType::push, rc, bs, gt, GenLevel::MG, Split::train);
  manip("push_gt_bs", MotionType::push, gt, bs, rc, GenLevel::MG, Split::train);
  manip("place_rc_gt", MotionType::pick_place, rc, gt, bs, GenLevel::MG, Split::train);
  manip("place_gt_rc", MotionType::pick_place, gt, rc, bs, GenLevel::MG, Split::train);
  manip("push_yc_rs", MotionType::push, yc, rs, bt, GenLevel::MG, Split::train);
  manip("push_rs_bt", MotionType::push, rs, bt, yc, GenLevel::MG, Split::train);
  manip("place_bt_yc", MotionType::pick_place, bt, yc, rs, GenLevel::MG, Split::train);
  manip("place_yc_bt", MotionType::pick_place, yc, bt, rs, GenLevel::MG, Split::train);

  // G: held-out colors of seen shapes
  auto pc = obj("pc", SC::circle, "purple");
  auto os = obj("os", SC::square, "orange");
  auto ct = obj("ct", SC::triangle, "cyan");
  auto ps = obj("ps", SC::square, "purple");
  auto cc = obj("cc", SC::circle, "cyan");
  auto ot = obj("ot", SC::triangle, "orange");
  manip("push_pc_os", MotionType::push, pc, os, ct, GenLevel::G, Split::eval);
  manip("place_ct_ps", MotionType::pick_place, ct, ps, cc, GenLevel::G, Split::eval);
  manip("push_ot_cc", MotionType::push, ot, cc, ps, GenLevel::G, Split::eval);
  manip("place_os_pc", MotionType::pick_place, os, pc, ot, GenLevel::G, Split::eval);

  // OTG: held-out shape categories, seen colors and motions
  auto rst = obj("rst", SC::star, "red");
  auto bh = obj("bh", SC::hexagon, "blue");
  auto gx = obj("gx", SC::cross, "green");
  auto ys = obj("ys", SC::star, "yellow");
  auto yh = obj("yh", SC::hexagon, "yellow");
  auto rr = obj("rr", SC::ring, "red");
  auto br = obj("br", SC::ring, "blue");
  auto gh = obj("gh", SC::hexagon, "green");
  manip("push_rst_bh", MotionType::push, rst, bh, gx, GenLevel::OTG, Split::eval);
  manip("place_gx_ys", MotionType::pick_place, gx, ys, bh, GenLevel::OTG, Split::eval);
  manip("push_yh_rr", MotionType::push, yh, rr, br, GenLevel::OTG, Split::eval);
  manip("place_br_gh", MotionType::pick_place, br, gh, rst, GenLevel::OTG, Split::eval);

  // MTG: held-out motion types
  {
    SuccessPredicate p;
    p.id = "drawer_open";
    p.kind = PredicateKind::articulation_above;
    p.target_id = "drawer1";
    p.threshold = 0.7;
    r.add_predicate(p);
    TaskSpec t;
    t.id = "mtg_open_drawer";
    t.language = "open the drawer";
    t.language_gerund = "opening the drawer";
    t.motion = MotionType::open_articulated;
    t.objects = {obj("drawer1", SC::drawer, "brown", 0.06), obj("d_rc", SC::circle, "red")};
    t.target_id = "drawer1";
    t.success_id = p.id;
    t.level = GenLevel::MTG;
    r.add_task(t, Split::eval);
  }
  {
    SuccessPredicate p;
    p.id = "lid_closed";
    p.kind = PredicateKind::articulation_below;
    p.target_id = "lid1";
    p.threshold = 0.3;
    r.add_predicate(p);
    TaskSpec t;
    t.id = "mtg_close_lid";
    t.language = "close the lid";
    t.language_gerund = "closing the lid";
    t.motion = MotionType::close_articulated;
    t.objects = {obj("lid1", SC::lid, "gray", 0.06, 1.0), obj("l_bs", SC::square, "blue")};
    t.target_id = "lid1";
    t.success_id = p.id;
    t.level = GenLevel::MTG;
    r.add_task(t, Split::eval);
  }
  {
    SuccessPredicate p;
    p.id = "table_wiped";
    p.kind = PredicateKind::region_cleared;
    p.threshold = 0.5;
    r.add_predicate(p);
    TaskSpec t;
    t.id = "mtg_wipe_table";
    t.language = "wipe the table with the cloth";
    t.language_gerund = "wiping the table with the cloth";
    t.motion = MotionType::wipe;
    t.objects = {obj("sm1", SC::smudge, "brown", 0.035), obj("sm2", SC::smudge, "brown", 0.035),
                 obj("cloth1", SC::cloth, "cyan", 0.045)};
    t.target_id = "cloth1";
    t.success_id = p.id;
    t.level = GenLevel::MTG;
    r.add_task(t, Split::eval);
  }
  {
    SuccessPredicate p;
    p.id = "button_pressed";
    p.kind = PredicateKind::articulation_above;
    p.target_id = "btn1";
    p.threshold = 0.5;
    r.add_predicate(p);
    TaskSpec t;
    t.id = "mtg_press_button";
    t.language = "press the button";
    t.language_gerund = "pressing the button";
    t.motion = MotionType::press;
    t.objects = {obj("btn1", SC::button, "orange", 0.04), obj("b_gt", SC::triangle, "green")};
    t.target_id = "btn1";
    t.success_id = p.id;
    t.level = GenLevel::MTG;
    r.add_task(t, Split::eval);
  }

  // ---- long-horizon activities (three stages each) --------------------------
  auto add_stage_open = [&](const std::string& tid, const std::string& thing,
                            const std::string& obj_id) {
    SuccessPredicate p;
    p.id = tid + "_done";
    p.kind = PredicateKind::articulation_above;
    p.target_id = obj_id;
    p.threshold = 0.7;
    r.add_predicate(p);
    TaskSpec t;
    t.id = tid;
    t.language = "open the " + thing;
    t.language_gerund = "opening the " + thing;
    t.motion = MotionType::open_articulated;
    t.target_id = obj_id;
    t.success_id = p.id;
    t.level = GenLevel::MTG;
    return t;
  };
  auto add_stage_close = [&](const std::string& tid, const std::string& thing,
                             const std::string& obj_id) {
    SuccessPredicate p;
    p.id = tid + "_done";
    p.kind = PredicateKind::articulation_below;
    p.target_id = obj_id;
    p.threshold = 0.3;
    r.add_predicate(p);
    TaskSpec t;
    t.id = tid;
    t.language = "close the " + thing;
    t.language_gerund = "closing the " + thing;
    t.motion = MotionType::close_articulated;
    t.target_id = obj_id;
    t.success_id = p.id;
    t.level = GenLevel::MTG;
    return t;
  };

  // Stowing Apple
  {
    auto drawer = obj("stow_drawer", SC::drawer, "brown", 0.06);
    auto apple = obj("apple", SC::circle, "red", 0.035);
    TaskSpec s1 = add_stage_open("stow_open_drawer", "drawer", "stow_drawer");
    s1.objects = {drawer, apple};
    r.add_task(s1, Split::eval, false);
    SuccessPredicate p2;
    p2.id = "apple_in_drawer";
    p2.kind = PredicateKind::proximity;
    p2.target_id = "apple";
    p2.goal_id = "stow_drawer";
    p2.goal_anchor = "slide";
    p2.threshold = 0.05;
    r.add_predicate(p2);
    TaskSpec s2;
    s2.id = "stow_place_apple";
    s2.language = "place the apple in the drawer";
    s2.language_gerund = "placing the apple in the drawer";
    s2.motion = MotionType::pick_place;
    s2.objects = {drawer, apple};
    s2.target_id = "apple";
    s2.goal_id = "stow_drawer";
    s2.success_id = p2.id;
    s2.level = GenLevel::MTG;
    r.add_task(s2, Split::eval, false);
    TaskSpec s3 = add_stage_close("stow_close_drawer", "drawer", "stow_drawer");
    s3.objects = {drawer, apple};
    r.add_task(s3, Split::eval, false);
    ActivitySpec a;
    a.id = "stowing_apple";
    a.name = "Stowing Apple";
    a.stages = {"stow_open_drawer", "stow_place_apple", "stow_close_drawer"};
    a.scene_objects = {drawer, apple};
    r.add_activity(a);
  }

  // Making Coffee
  {
    auto lid = obj("coffee_lid", SC::lid, "gray", 0.06);
    auto pod = obj("pod", SC::circle, "brown", 0.03);
    TaskSpec s1 = add_stage_open("coffee_open_lid", "lid", "coffee_lid");
    s1.objects = {pod, lid};
    r.add_task(s1, Split::eval, false);
    SuccessPredicate p2;
    p2.id = "pod_inside";
    p2.kind = PredicateKind::proximity;
    p2.target_id = "pod";
    p2.goal_id = "coffee_lid";
    p2.goal_anchor = "center";
    p2.threshold = 0.05;
    r.add_predicate(p2);
    TaskSpec s2;
    s2.id = "coffee_place_pod";
    s2.language = "place the k-cup pod inside";
    s2.language_gerund = "placing the k-cup pod inside";
    s2.motion = MotionType::pick_place;
    s2.objects = {pod, lid};
    s2.target_id = "pod";
    s2.goal_id = "coffee_lid";
    s2.success_id = p2.id;
    s2.level = GenLevel::MTG;
    r.add_task(s2, Split::eval, false);
    TaskSpec s3 = add_stage_close("coffee_close_lid", "lid", "coffee_lid");
    s3.objects = {pod, lid};
    r.add_task(s3, Split::eval, false);
    ActivitySpec a;
    a.id = "making_coffee";
    a.name = "Making Coffee";
    a.stages = {"coffee_open_lid", "coffee_place_pod", "coffee_close_lid"};
    a.scene_objects = {pod, lid};
    r.add_activity(a);
  }

  // Cleaning Table
  {
    auto sm1 = obj("c_sm1", SC::smudge, "brown", 0.035);
    auto sm2 = obj("c_sm2", SC::smudge, "brown", 0.035);
    auto box = obj("tissue_box", SC::square, "blue", 0.055);
    auto tissue = obj("tissue", SC::cloth, "cyan", 0.045);
    auto dispenser = obj("dispenser", SC::button, "orange", 0.04);
    std::vector<ObjectTemplate> scene = {sm1, sm2, box, tissue, dispenser};

    SuccessPredicate p1;
    p1.id = "tissue_taken";
    p1.kind = PredicateKind::proximity;
    p1.target_id = "tissue";
    p1.use_goal_point = true;
    p1.goal_point = {0.5, 0.55};
    p1.threshold = 0.06;
    r.add_predicate(p1);
    TaskSpec s1;
    s1.id = "clean_pick_tissue";
    s1.language = "pick the tissue from the box";
    s1.language_gerund = "picking the tissue from the box";
    s1.motion = MotionType::pick_place;
    s1.objects = scene;
    s1.target_id = "tissue";
    s1.success_id = p1.id;
    s1.level = GenLevel::MTG;
    r.add_task(s1, Split::eval, false);

    SuccessPredicate p2;
    p2.id = "dispenser_pressed";
    p2.kind = PredicateKind::articulation_above;
    p2.target_id = "dispenser";
    p2.threshold = 0.5;
    r.add_predicate(p2);
    TaskSpec s2;
    s2.id = "clean_press_dispenser";
    s2.language = "press the sanitizer dispenser";
    s2.language_gerund = "pressing the sanitizer dispenser";
    s2.motion = MotionType::press;
    s2.objects = scene;
    s2.target_id = "dispenser";
    s2.success_id = p2.id;
    s2.level = GenLevel::MTG;
    r.add_task(s2, Split::eval, false);

    SuccessPredicate p3;
    p3.id = "table_clean";
    p3.kind = PredicateKind::region_cleared;
    p3.threshold = 0.5;
    r.add_predicate(p3);
    TaskSpec s3;
    s3.id = "clean_wipe_table";
    s3.language = "wipe the table with the tissue";
    s3.language_gerund = "wiping the table with the tissue";
    s3.motion = MotionType::wipe;
    s3.objects = scene;
    s3.target_id = "tissue";
    s3.success_id = p3.id;
    s3.level = GenLevel::MTG;
    r.add_task(s3, Split::eval, false);

    ActivitySpec a;
    a.id = "cleaning_table";
    a.name = "Cleaning Table";
    a.stages = {"clean_pick_tissue", "clean_press_dispenser", "clean_wipe_table"};
    a.scene_objects = scene;
    r.add_activity(a);
  }

  // Heating Soup
  {
    auto bowl = obj("bowl", SC::ring, "blue", 0.035);
    auto mw = obj("mw", SC::microwave, "gray", 0.07);
    TaskSpec s1 = add_stage_open("soup_open_microwave", "microwave", "mw");
    s1.objects = {bowl, mw};
    r.add_task(s1, Split::eval, false);
    SuccessPredicate p2;
    p2.id = "bowl_inside";
    p2.kind = PredicateKind::proximity;
    p2.target_id = "bowl";
    p2.goal_id = "mw";
    p2.goal_anchor = "center";
    p2.threshold = 0.05;
    r.add_predicate(p2);
    TaskSpec s2;
    s2.id = "soup_place_bowl";
    s2.language = "put the bowl inside the microwave";
    s2.language_gerund = "putting the bowl inside the microwave";
    s2.motion = MotionType::pick_place;
    s2.objects = {bowl, mw};
    s2.target_id = "bowl";
    s2.goal_id = "mw";
    s2.success_id = p2.id;
    s2.level = GenLevel::MTG;
    r.add_task(s2, Split::eval, false);
    TaskSpec s3 = add_stage_close("soup_close_microwave", "microwave", "mw");
    s3.objects = {bowl, mw};
    r.add_task(s3, Split::eval, false);
    ActivitySpec a;
    a.id = "heating_soup";
    a.name = "Heating Soup";
    a.stages = {"soup_open_microwave", "soup_place_bowl", "soup_close_microwave"};
    a.scene_objects = {bowl, mw};
    r.add_activity(a);
  }

  return r;
}

}  // namespace genact::taskbank
