#pragma once

#include <json.hpp>

#include <string>

namespace genact {

// Which conditioning stream the policy decoder sees.
//   video      — resampled generated-video tokens, track auxiliaries on
//   video_no_track — same architecture trained with track weight 0
//   language_only  — a learned per-task embedding token (no video input)
//   goal_image     — resampled tokens of only the last generated frame
enum class PolicyVariant { video, video_no_track, language_only, goal_image };

PolicyVariant variant_from_string(const std::string& s);
std::string variant_to_string(PolicyVariant v);

struct ModelConfig {
  int image_size = 64;
  int patch_size = 8;
  int embed_dim = 128;
  int vit_layers = 2;
  int vit_heads = 4;
  int mlp_ratio = 4;
  int resampler_layers = 2;
  int resampler_heads = 8;
  int num_latents = 64;     // N tokens out of each resampler
  int video_frames = 16;    // frames sampled from the generated video
  int history = 8;          // k, robot observation window
  int max_frames = 32;      // temporal embedding capacity
  int track_layers = 6;
  int track_heads = 8;
  int track_points = 32;
  int decoder_layers = 4;
  int decoder_heads = 8;
  int chunk = 4;            // h, action chunk length
  int action_bins = 256;
  int num_tasks = 64;       // language-embedding table size (row 0 = unknown)
  PolicyVariant variant = PolicyVariant::video;

  int patches_per_frame() const {
    int g = image_size / patch_size;
    return g * g;
  }
  int grid() const { return image_size / patch_size; }
  // conditioning sequence length entering the policy decoder
  int cond_tokens() const { return variant == PolicyVariant::language_only ? 1 : num_latents; }

  nlohmann::json to_json() const;
  static ModelConfig from_json(const nlohmann::json& j);
};

}  // namespace genact
