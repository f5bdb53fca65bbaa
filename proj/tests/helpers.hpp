#pragma once

#include "genact/model_config.hpp"

namespace genact::testing {

// Small dims for gradient checks and shape tests; structure mirrors the
// default model.
inline ModelConfig tiny_config() {
  ModelConfig c;
  c.image_size = 16;
  c.patch_size = 8;
  c.embed_dim = 8;
  c.vit_layers = 2;
  c.vit_heads = 4;
  c.mlp_ratio = 2;
  c.resampler_layers = 2;
  c.resampler_heads = 8;
  c.num_latents = 4;
  c.video_frames = 4;
  c.history = 4;
  c.max_frames = 8;
  c.track_layers = 2;
  c.track_heads = 8;
  c.track_points = 4;
  c.decoder_layers = 2;
  c.decoder_heads = 8;
  c.chunk = 2;
  c.action_bins = 16;
  c.num_tasks = 4;
  return c;
}

}  // namespace genact::testing
