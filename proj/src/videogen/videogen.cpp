#include "genact/videogen/videogen.hpp"

#include <filesystem>
#include <fstream>

#include "genact/core/error.hpp"
#include "genact/core/hash.hpp"
#include "genact/core/probe.hpp"
#include "genact/core/rng.hpp"
#include "genact/core/tensor_io.hpp"
#include "genact/worldsim/demo.hpp"
#include "genact/worldsim/render.hpp"
#include "genact/worldsim/world.hpp"

namespace genact::videogen {

using worldsim::Embodiment;
using worldsim::Frame;
using worldsim::WorldState;

std::string format_prompt(const taskbank::TaskSpec& task) {
  return "A person " + task.language_gerund + ", static camera";
}

const char* corruption_name(CorruptionMode m) {
  switch (m) {
    case CorruptionMode::none: return "none";
    case CorruptionMode::wrong_object: return "wrong_object";
    case CorruptionMode::camera_jitter: return "camera_jitter";
    case CorruptionMode::frozen_motion: return "frozen_motion";
  }
  return "none";
}

uint64_t frame_content_hash(const worldsim::Frame& f) {
  uint64_t h = fnv1a(&f.h, sizeof(f.h));
  h = fnv1a(&f.w, sizeof(f.w), h);
  return fnv1a(f.px.data(), f.px.size() * sizeof(float), h);
}

void SceneRegistry::register_scene(const Frame& conditioning_image, WorldState state) {
  scenes_[frame_content_hash(conditioning_image)] = std::move(state);
}

const WorldState* SceneRegistry::lookup(const Frame& conditioning_image) const {
  auto it = scenes_.find(frame_content_hash(conditioning_image));
  return it == scenes_.end() ? nullptr : &it->second;
}

namespace {

// Extracts the gerund from "A person <gerund>, static camera".
std::optional<std::string> parse_prompt(const std::string& prompt) {
  const std::string prefix = "A person ";
  const std::string suffix = ", static camera";
  if (prompt.size() <= prefix.size() + suffix.size()) return std::nullopt;
  if (prompt.compare(0, prefix.size(), prefix) != 0) return std::nullopt;
  if (prompt.compare(prompt.size() - suffix.size(), suffix.size(), suffix) != 0)
    return std::nullopt;
  return prompt.substr(prefix.size(), prompt.size() - prefix.size() - suffix.size());
}

GeneratedVideo static_video(const Frame& conditioning, uint64_t seed, uint64_t scene_hash,
                            const std::string& task_id) {
  GeneratedVideo out;
  out.frames.assign(8, conditioning);
  out.provenance = {"scripted", seed, CorruptionMode::none, false, scene_hash, task_id};
  return out;
}

}  // namespace

GeneratedVideo ScriptedGenerator::generate(const GenerationRequest& request) {
  probe::hit("videogen.generate");
  if (request.language.empty()) raise(ErrorCode::InvalidInput, "empty prompt");
  const WorldState* state = scenes_->lookup(request.conditioning_image);
  if (!state) raise(ErrorCode::UnknownScene, "conditioning image not in scene registry");
  uint64_t scene_hash = frame_content_hash(request.conditioning_image);

  auto gerund = parse_prompt(request.language);
  std::vector<const taskbank::TaskSpec*> matches;
  if (gerund) matches = registry_->find_by_gerund(*gerund);
  if (matches.empty())
    return static_video(request.conditioning_image, request.seed, scene_hash, "");

  // Same prompt text can name several registered tasks (activity stages echo
  // task language); take the one this scene supports.
  const taskbank::TaskSpec* task = nullptr;
  for (const auto* m : matches)
    if (worldsim::demonstrable(*m, *state, cfg_)) {
      task = m;
      break;
    }
  if (!task)
    return static_video(request.conditioning_image, request.seed, scene_hash, matches[0]->id);

  GeneratedVideo out;
  out.provenance.backend = "scripted";
  out.provenance.seed = request.seed;
  out.provenance.scene_hash = scene_hash;
  out.provenance.task_id = task->id;
  try {
    auto demo = worldsim::scripted_demo(*task, *state, Embodiment::human_hand, cfg_);
    // Frame 0 must equal the conditioning image bit-exactly; the demo's
    // initial state renders to it with the sprite omitted.
    out.frames.push_back(worldsim::render(*state, Embodiment::none, cfg_));
    for (size_t i = 1; i < demo.video.size(); ++i) out.frames.push_back(demo.video[i]);
    out.provenance.internal_success =
        worldsim::evaluate_predicate(task->success, demo.states.back(), cfg_);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::DemoFailure) throw;
    return static_video(request.conditioning_image, request.seed, scene_hash, task->id);
  }
  return out;
}

GeneratedVideo ScriptedGenerator::regenerate_wrong_object(const GeneratedVideo& video,
                                                          uint64_t seed) {
  auto it = video.provenance.task_id;
  if (it.empty()) raise(ErrorCode::InvalidInput, "wrong_object needs a resolved task");
  const taskbank::TaskSpec& task = registry_->task(it);
  // recover the scene from the stored hash via frame 0
  const WorldState* state = scenes_->lookup(video.frames.at(0));
  if (!state) raise(ErrorCode::UnknownScene, "scene not registered for corruption");

  // pick a different graspable object, deterministically by seed
  std::vector<std::string> candidates;
  for (const auto& o : state->objects)
    if (o.id != task.target_id && worldsim::is_graspable(o.shape)) candidates.push_back(o.id);
  if (candidates.empty()) raise(ErrorCode::InvalidInput, "no alternative object in scene");
  Rng rng(derive_seed(seed, "wrong_object"));
  std::string alt = candidates[static_cast<size_t>(
      rng.uniform_int(0, static_cast<int>(candidates.size()) - 1))];

  // The wrong demo carries the alternative object to a fixed drop point.
  // The original objects stay put, so the original predicate cannot be
  // satisfied by accident.
  taskbank::TaskSpec wrong = task;
  wrong.target_id = alt;
  wrong.goal_id = "";
  wrong.motion = taskbank::MotionType::pick_place;
  wrong.success.kind = taskbank::PredicateKind::proximity;
  wrong.success.target_id = alt;
  wrong.success.goal_id = "";
  wrong.success.use_goal_point = true;
  wrong.success.goal_point = {0.15, 0.18};
  wrong.success.threshold = 0.05;

  GeneratedVideo out;
  out.provenance = video.provenance;
  out.provenance.corruption = CorruptionMode::wrong_object;
  out.provenance.seed = seed;
  try {
    auto demo = worldsim::scripted_demo(wrong, *state, Embodiment::human_hand, cfg_);
    out.frames.push_back(worldsim::render(*state, Embodiment::none, cfg_));
    for (size_t i = 1; i < demo.video.size(); ++i) out.frames.push_back(demo.video[i]);
    // internal_success judges the ORIGINAL task on the corrupted terminal state
    out.provenance.internal_success =
        worldsim::evaluate_predicate(task.success, demo.states.back(), cfg_);
  } catch (const Error&) {
    out.frames = video.frames;
    out.frames.assign(video.frames.size(), video.frames.at(0));
    out.provenance.internal_success = false;
  }
  return out;
}

GeneratedVideo corrupt(ScriptedGenerator& generator, const GeneratedVideo& video,
                       CorruptionMode mode, uint64_t seed) {
  switch (mode) {
    case CorruptionMode::none:
      raise(ErrorCode::InvalidInput, "corrupt: mode none");
    case CorruptionMode::wrong_object:
      return generator.regenerate_wrong_object(video, seed);
    case CorruptionMode::frozen_motion: {
      GeneratedVideo out;
      out.frames.assign(video.frames.size(), video.frames.at(0));
      out.provenance = video.provenance;
      out.provenance.corruption = CorruptionMode::frozen_motion;
      out.provenance.seed = seed;
      // terminal state is the initial state; a nondegenerate task is unmet
      out.provenance.internal_success = false;
      const taskbank::Registry& reg = generator.registry();
      const auto* state = generator.scenes().lookup(video.frames.at(0));
      if (state && !video.provenance.task_id.empty()) {
        const auto& task = reg.task(video.provenance.task_id);
        out.provenance.internal_success =
            worldsim::evaluate_predicate(task.success, *state, generator.sim_config());
      }
      return out;
    }
    case CorruptionMode::camera_jitter: {
      GeneratedVideo out = video;
      out.provenance.corruption = CorruptionMode::camera_jitter;
      out.provenance.seed = seed;
      Rng rng(derive_seed(seed, "camera_jitter"));
      for (auto& f : out.frames) {
        int dx = rng.uniform_int(-3, 3);
        int dy = rng.uniform_int(-3, 3);
        worldsim::Frame shifted(f.h, f.w);
        auto bg = worldsim::background_color();
        for (int y = 0; y < f.h; ++y)
          for (int x = 0; x < f.w; ++x) {
            int sy = y - dy, sx = x - dx;
            if (sy >= 0 && sy < f.h && sx >= 0 && sx < f.w) {
              for (int c = 0; c < 3; ++c) shifted.at(y, x, c) = f.at(sy, sx, c);
            } else {
              shifted.at(y, x, 0) = bg.r;
              shifted.at(y, x, 1) = bg.g;
              shifted.at(y, x, 2) = bg.b;
            }
          }
        f = shifted;
      }
      return out;
    }
  }
  raise(ErrorCode::InvalidInput, "corrupt: unknown mode");
}

// ---- recorded backend -------------------------------------------------------

uint64_t RecordedGenerator::request_hash(const GenerationRequest& request) {
  uint64_t h = frame_content_hash(request.conditioning_image);
  h = fnv1a(request.language, h);
  return fnv1a(&request.seed, sizeof(request.seed), h);
}

void RecordedGenerator::record(const std::string& root, const GenerationRequest& request,
                               const GeneratedVideo& video) {
  namespace fs = std::filesystem;
  fs::path dir = fs::path(root) / hash_hex(request_hash(request));
  fs::create_directories(dir);
  const auto& frames = video.frames;
  TensorF t({static_cast<int>(frames.size()), frames[0].h, frames[0].w, 3});
  size_t off = 0;
  for (const auto& f : frames) {
    std::copy(f.px.begin(), f.px.end(), t.data.begin() + static_cast<int64_t>(off));
    off += f.px.size();
  }
  save_tensor_file((dir / "video.bin").string(), {t});
  nlohmann::json j;
  j["backend"] = video.provenance.backend;
  j["seed"] = video.provenance.seed;
  j["corruption"] = corruption_name(video.provenance.corruption);
  j["internal_success"] = video.provenance.internal_success;
  j["scene_hash"] = video.provenance.scene_hash;
  j["task_id"] = video.provenance.task_id;
  std::ofstream out(dir / "provenance.json", std::ios::trunc);
  out << j.dump(2) << "\n";
}

GeneratedVideo RecordedGenerator::generate(const GenerationRequest& request) {
  probe::hit("videogen.generate");
  namespace fs = std::filesystem;
  fs::path dir = fs::path(root_) / hash_hex(request_hash(request));
  if (!fs::exists(dir / "video.bin"))
    raise(ErrorCode::UnknownScene, "no recorded video for request");
  std::ifstream in(dir / "video.bin", std::ios::binary);
  TensorF t = read_tensor(in);
  GeneratedVideo out;
  int T = t.shape[0], H = t.shape[1], W = t.shape[2];
  for (int i = 0; i < T; ++i) {
    worldsim::Frame f(H, W);
    std::copy(t.data.begin() + static_cast<int64_t>(i) * H * W * 3,
              t.data.begin() + static_cast<int64_t>(i + 1) * H * W * 3, f.px.begin());
    out.frames.push_back(std::move(f));
  }
  std::ifstream pj(dir / "provenance.json");
  nlohmann::json j;
  pj >> j;
  out.provenance.backend = j.at("backend").get<std::string>();
  out.provenance.seed = j.at("seed").get<uint64_t>();
  out.provenance.internal_success = j.at("internal_success").get<bool>();
  out.provenance.scene_hash = j.at("scene_hash").get<uint64_t>();
  out.provenance.task_id = j.at("task_id").get<std::string>();
  return out;
}

}  // namespace genact::videogen
