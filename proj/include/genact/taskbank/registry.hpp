#pragma once

#include <json.hpp>

#include <map>
#include <string>
#include <vector>

#include "genact/taskbank/types.hpp"
#include "genact/worldsim/types.hpp"

namespace genact::taskbank {

// Task registry: tasks, success predicates, generalization splits, and
// long-horizon activity decompositions. Read-only after load.
class Registry {
 public:
  void add_predicate(SuccessPredicate pred);
  // enumerable=false keeps a task addressable (activity stages) without
  // entering the generalization-level enumerations and holdout sets.
  void add_task(TaskSpec task, Split split, bool enumerable = true);
  void add_activity(ActivitySpec activity);

  const TaskSpec& task(const std::string& id) const;
  bool has_task(const std::string& id) const;
  // Tasks sharing a prompt payload (activity stages echo eval-task language);
  // callers disambiguate by scene feasibility.
  std::vector<const TaskSpec*> find_by_gerund(const std::string& gerund) const;

  // Train split contains only MG-level content; eval splits realize each
  // level's holdout. Throws ConfigError when the filter yields nothing.
  std::vector<TaskSpec> enumerate_tasks(GenLevel level, Split split) const;

  bool check_success(const TaskSpec& task, const worldsim::WorldState& state,
                     const worldsim::SimConfig& cfg) const;

  const ActivitySpec& activity(const std::string& id) const;
  std::vector<TaskSpec> decompose_activity(const ActivitySpec& activity) const;
  std::vector<std::string> activity_ids() const;

  // Stable task index for the language-conditioned baseline; 0 is reserved
  // for unknown ids (eval tasks outside the train split).
  int task_index(const std::string& id) const;
  int num_task_indices() const;

  // Attribute sets, by enumeration over a split (used by holdout tests).
  std::vector<std::string> shape_set(Split split) const;
  std::vector<std::string> motion_set(Split split) const;

  nlohmann::json to_json() const;
  static Registry from_json(const nlohmann::json& j);
  void save(const std::string& path) const;
  static Registry load(const std::string& path);

  const std::vector<std::string>& task_ids() const { return task_order_; }
  Split split_of(const std::string& id) const;

 private:
  std::map<std::string, SuccessPredicate> predicates_;
  std::map<std::string, TaskSpec> tasks_;
  std::map<std::string, Split> splits_;
  std::map<std::string, bool> enumerable_;
  std::vector<std::string> task_order_;
  std::map<std::string, ActivitySpec> activities_;
  std::vector<std::string> activity_order_;
  std::map<std::string, int> train_index_;  // language-embedding rows
};

// The built-in bank used by tests and shipped as config/tasks.json.
Registry default_registry();

}  // namespace genact::taskbank
