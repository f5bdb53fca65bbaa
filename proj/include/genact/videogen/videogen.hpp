#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "genact/taskbank/registry.hpp"
#include "genact/worldsim/types.hpp"

namespace genact::videogen {

// Prompt template for the video model: "A person <gerund>, static camera".
std::string format_prompt(const taskbank::TaskSpec& task);

struct GenerationRequest {
  worldsim::Frame conditioning_image;  // I_0, no embodiment visible
  std::string language;                // the full prompt
  uint64_t seed = 0;
};

enum class CorruptionMode { none, wrong_object, camera_jitter, frozen_motion };
const char* corruption_name(CorruptionMode m);

struct Provenance {
  std::string backend;
  uint64_t seed = 0;
  CorruptionMode corruption = CorruptionMode::none;
  bool internal_success = false;  // sim-only observable, never a policy input
  uint64_t scene_hash = 0;        // content hash of the conditioning image
  std::string task_id;            // resolved task ("" if unresolved)
};

struct GeneratedVideo {
  worldsim::Video frames;
  Provenance provenance;
};

uint64_t frame_content_hash(const worldsim::Frame& f);

// Maps conditioning images back to simulator states. This privileged lookup
// is how the scripted backend "knows" the scene; the public generate()
// signature stays image+text.
class SceneRegistry {
 public:
  void register_scene(const worldsim::Frame& conditioning_image, worldsim::WorldState state);
  const worldsim::WorldState* lookup(const worldsim::Frame& conditioning_image) const;

 private:
  std::map<uint64_t, worldsim::WorldState> scenes_;
};

class VideoGenerator {
 public:
  virtual ~VideoGenerator() = default;
  virtual GeneratedVideo generate(const GenerationRequest& request) = 0;
};

// Default backend: replays the scripted demonstrator with the human-hand
// embodiment. Frame 0 is the conditioning image itself (static camera, scene
// preserved); a request it cannot demonstrate yields a static video with
// internal_success=false instead of raising.
class ScriptedGenerator : public VideoGenerator {
 public:
  ScriptedGenerator(const taskbank::Registry& registry, SceneRegistry& scenes,
                    const worldsim::SimConfig& cfg)
      : registry_(&registry), scenes_(&scenes), cfg_(cfg) {}

  GeneratedVideo generate(const GenerationRequest& request) override;

  // Regenerates the demo manipulating a different object in the same scene.
  GeneratedVideo regenerate_wrong_object(const GeneratedVideo& video, uint64_t seed);

  const worldsim::SimConfig& sim_config() const { return cfg_; }
  const taskbank::Registry& registry() const { return *registry_; }
  const SceneRegistry& scenes() const { return *scenes_; }

 private:
  const taskbank::Registry* registry_;
  SceneRegistry* scenes_;
  worldsim::SimConfig cfg_;
};

// Reads pre-rendered videos from disk: one subdirectory per request hash with
// video.bin (tensor container) and provenance.json. The seam for plugging
// real model outputs in.
class RecordedGenerator : public VideoGenerator {
 public:
  explicit RecordedGenerator(std::string root) : root_(std::move(root)) {}
  GeneratedVideo generate(const GenerationRequest& request) override;

  static void record(const std::string& root, const GenerationRequest& request,
                     const GeneratedVideo& video);
  static uint64_t request_hash(const GenerationRequest& request);

 private:
  std::string root_;
};

// Corruption for failure-analysis experiments. wrong_object needs the
// scripted backend; the pixel modes work on any video.
GeneratedVideo corrupt(ScriptedGenerator& generator, const GeneratedVideo& video,
                       CorruptionMode mode, uint64_t seed);

}  // namespace genact::videogen
