#include <doctest.h>

#include <filesystem>

#include "genact/core/error.hpp"
#include "genact/core/probe.hpp"
#include "genact/taskbank/registry.hpp"
#include "genact/videogen/videogen.hpp"
#include "genact/worldsim/demo.hpp"
#include "genact/worldsim/render.hpp"
#include "genact/worldsim/world.hpp"

using namespace genact;
using namespace genact::videogen;
using namespace genact::worldsim;
using taskbank::GenLevel;
using taskbank::Split;

namespace {

struct Fixture {
  taskbank::Registry registry = taskbank::default_registry();
  SceneRegistry scenes;
  SimConfig cfg;
  ScriptedGenerator gen{registry, scenes, cfg};

  GenerationRequest request_for(const std::string& task_id, uint64_t seed) {
    const auto& task = registry.task(task_id);
    WorldState s = reset(task, seed, cfg);
    Frame i0 = render(s, Embodiment::none, cfg);
    scenes.register_scene(i0, s);
    return GenerationRequest{i0, format_prompt(task), seed};
  }
};

bool contains_palette(const Video& v, const std::vector<Color>& palette) {
  for (const auto& f : v)
    for (int y = 0; y < f.h; ++y)
      for (int x = 0; x < f.w; ++x)
        for (const auto& c : palette)
          if (f.at(y, x, 0) == c.r && f.at(y, x, 1) == c.g && f.at(y, x, 2) == c.b) return true;
  return false;
}

}  // namespace

TEST_CASE("format_prompt follows the template exactly") {
  taskbank::TaskSpec t;
  t.language = "open the microwave";
  t.language_gerund = "opening the microwave";
  CHECK(format_prompt(t) == "A person opening the microwave, static camera");

  t.language_gerund = "opening the drawer";
  CHECK(format_prompt(t) == "A person opening the drawer, static camera");
}

TEST_CASE("generate: scene preserved, task performed, no robot sprite") {
  Fixture fx;
  auto req = fx.request_for("mtg_open_drawer", 3);
  auto video = fx.gen.generate(req);
  CHECK(video.provenance.internal_success);
  CHECK(video.frames[0] == req.conditioning_image);
  CHECK_FALSE(contains_palette(video.frames, robot_sprite_palette()));
  CHECK(contains_palette(video.frames, human_sprite_palette()));

  // deterministic
  auto again = fx.gen.generate(req);
  REQUIRE(again.frames.size() == video.frames.size());
  for (size_t i = 0; i < video.frames.size(); ++i) CHECK(again.frames[i] == video.frames[i]);
}

TEST_CASE("generate: unknown scene raises, missing object degrades gracefully") {
  Fixture fx;
  Frame unknown(fx.cfg.image_size, fx.cfg.image_size);
  GenerationRequest bad{unknown, "A person opening the drawer, static camera", 1};
  bool threw = false;
  try {
    fx.gen.generate(bad);
  } catch (const Error& e) {
    threw = e.code() == ErrorCode::UnknownScene;
  }
  CHECK(threw);

  // scene registered for one task, asked to do a task whose object is absent
  auto req = fx.request_for("push_rc_bs", 5);
  req.language = format_prompt(fx.registry.task("mtg_open_drawer"));
  auto video = fx.gen.generate(req);
  CHECK_FALSE(video.provenance.internal_success);
  CHECK(video.frames[0] == req.conditioning_image);
}

TEST_CASE("generation succeeds for every eval task at every level") {
  Fixture fx;
  for (auto level : {GenLevel::MG, GenLevel::G, GenLevel::OTG, GenLevel::MTG}) {
    for (const auto& task : fx.registry.enumerate_tasks(level, Split::eval)) {
      auto req = fx.request_for(task.id, 17);
      auto video = fx.gen.generate(req);
      CHECK_MESSAGE(video.provenance.internal_success, task.id);
      CHECK_FALSE(contains_palette(video.frames, robot_sprite_palette()));
    }
  }
}

TEST_CASE("corrupt: frozen_motion repeats frame zero") {
  Fixture fx;
  auto video = fx.gen.generate(fx.request_for("push_rc_bs", 7));
  auto frozen = corrupt(fx.gen, video, CorruptionMode::frozen_motion, 9);
  CHECK(frozen.frames.size() == video.frames.size());
  for (const auto& f : frozen.frames) CHECK(f == video.frames[0]);
  CHECK(frozen.provenance.corruption == CorruptionMode::frozen_motion);
  CHECK_FALSE(frozen.provenance.internal_success);
}

TEST_CASE("corrupt: camera_jitter is a deterministic small integer shift") {
  Fixture fx;
  auto video = fx.gen.generate(fx.request_for("push_rc_bs", 11));
  auto j1 = corrupt(fx.gen, video, CorruptionMode::camera_jitter, 13);
  auto j2 = corrupt(fx.gen, video, CorruptionMode::camera_jitter, 13);
  REQUIRE(j1.frames.size() == j2.frames.size());
  for (size_t i = 0; i < j1.frames.size(); ++i) CHECK(j1.frames[i] == j2.frames[i]);

  // every jittered frame equals its source shifted by some |d| <= 3
  for (size_t i = 0; i < video.frames.size(); ++i) {
    const Frame& src = video.frames[i];
    const Frame& dst = j1.frames[i];
    bool found = false;
    for (int dy = -3; dy <= 3 && !found; ++dy)
      for (int dx = -3; dx <= 3 && !found; ++dx) {
        bool match = true;
        for (int y = 0; y < src.h && match; ++y)
          for (int x = 0; x < src.w && match; ++x) {
            int sy = y - dy, sx = x - dx;
            if (sy < 0 || sy >= src.h || sx < 0 || sx >= src.w) continue;
            for (int c = 0; c < 3; ++c)
              if (dst.at(y, x, c) != src.at(sy, sx, c)) {
                match = false;
                break;
              }
          }
        found = match;
      }
    CHECK(found);
  }
}

TEST_CASE("corrupt: wrong_object manipulates a different object") {
  Fixture fx;
  auto req = fx.request_for("push_rc_bs", 19);
  auto video = fx.gen.generate(req);
  REQUIRE(video.provenance.internal_success);
  auto wrong = corrupt(fx.gen, video, CorruptionMode::wrong_object, 23);
  CHECK(wrong.provenance.corruption == CorruptionMode::wrong_object);
  CHECK_FALSE(wrong.provenance.internal_success);

  // the task target (red circle) stays where it started: sample its pixel
  const auto* state = fx.scenes.lookup(video.frames[0]);
  REQUIRE(state != nullptr);
  Vec2 rc = state->find("rc")->pose;
  int px = static_cast<int>(rc.x * fx.cfg.image_size);
  int py = static_cast<int>(rc.y * fx.cfg.image_size);
  const Frame& first = wrong.frames.front();
  const Frame& last = wrong.frames.back();
  for (int c = 0; c < 3; ++c) CHECK(first.at(py, px, c) == last.at(py, px, c));

  bool threw = false;
  try {
    corrupt(fx.gen, video, CorruptionMode::none, 1);
  } catch (const Error& e) {
    threw = e.code() == ErrorCode::InvalidInput;
  }
  CHECK(threw);
}

TEST_CASE("recorded backend round-trips a generated video") {
  Fixture fx;
  auto req = fx.request_for("place_rc_gt", 29);
  auto video = fx.gen.generate(req);

  auto dir = std::filesystem::temp_directory_path() / "genact_recorded_test";
  std::filesystem::remove_all(dir);
  RecordedGenerator::record(dir.string(), req, video);
  RecordedGenerator rec(dir.string());
  auto loaded = rec.generate(req);
  REQUIRE(loaded.frames.size() == video.frames.size());
  for (size_t i = 0; i < video.frames.size(); ++i) CHECK(loaded.frames[i] == video.frames[i]);
  CHECK(loaded.provenance.internal_success == video.provenance.internal_success);

  GenerationRequest other = req;
  other.seed += 1;
  CHECK_THROWS_AS(rec.generate(other), Error);
  std::filesystem::remove_all(dir);
}

TEST_CASE("generate is counted once per call by the probe") {
  Fixture fx;
  probe::reset();
  auto req = fx.request_for("push_gt_bs", 31);
  fx.gen.generate(req);
  fx.gen.generate(req);
  CHECK(probe::count("videogen.generate") == 2);
  probe::reset();
}
