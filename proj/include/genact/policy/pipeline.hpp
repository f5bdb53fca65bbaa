#pragma once

#include <vector>

#include "genact/model_config.hpp"
#include "genact/perception/encoder.hpp"
#include "genact/perception/frame_sampling.hpp"
#include "genact/policy/policy.hpp"
#include "genact/trackhead/trackhead.hpp"

namespace genact::policy {

// Registers every parameter tensor the variant needs, in a fixed order that
// defines the checkpoint layout.
template <typename T>
void init_all_params(ParamStore<T>& s, const ModelConfig& cfg, Rng& rng) {
  perception::init_encoder_params(s, cfg, rng);
  bool video_cond = cfg.variant != PolicyVariant::language_only;
  bool tracks = cfg.variant == PolicyVariant::video || cfg.variant == PolicyVariant::video_no_track;
  if (video_cond) perception::init_resampler_params(s, perception::Stream::generated, cfg, rng);
  perception::init_resampler_params(s, perception::Stream::robot, cfg, rng);
  if (tracks) {
    trackhead::init_trackhead_params(s, perception::Stream::generated, cfg, rng);
    trackhead::init_trackhead_params(s, perception::Stream::robot, cfg, rng);
  }
  init_policy_params(s, cfg, rng);
}

template <typename T>
bool variant_has_tracks(const ModelConfig& cfg) {
  return cfg.variant == PolicyVariant::video || cfg.variant == PolicyVariant::video_no_track;
}

// Encodes frames and returns per-frame patch-token nodes.
template <typename T>
std::vector<typename Graph<T>::Id> encode_frames(Graph<T>& g,
                                                 const std::vector<const worldsim::Frame*>& frames,
                                                 const ModelConfig& cfg) {
  std::vector<typename Graph<T>::Id> out;
  out.reserve(frames.size());
  for (const auto* f : frames) out.push_back(perception::encode_frame(g, *f, cfg));
  return out;
}

// Conditioning tokens for the policy decoder, by variant.
//   video / video_no_track: resampled tokens of the sampled generated frames
//   goal_image:             resampled tokens of only the last generated frame
//   language_only:          one learned task-id embedding row
// Returns the conditioning node; for video variants also exposes the per-frame
// patch tokens so the track head can reuse the first frame's features.
template <typename T>
typename Graph<T>::Id condition_tokens(Graph<T>& g,
                                       const std::vector<const worldsim::Frame*>& video_frames,
                                       int task_index, const ModelConfig& cfg,
                                       std::vector<typename Graph<T>::Id>* video_tokensatches =
                                           nullptr) {
  if (cfg.variant == PolicyVariant::language_only) return language_condition(g, task_index, cfg);
  std::vector<const worldsim::Frame*> use = video_frames;
  if (cfg.variant == PolicyVariant::goal_image && !use.empty()) use = {use.back()};
  auto toks = encode_frames<T>(g, use, cfg);
  if (video_tokensatches) *video_tokensatches = toks;
  return perception::resample(g, perception::Stream::generated, toks, cfg);
}

// ---- inference -----------------------------------------------------------------

// Per-episode cache of the conditioning tokens (z_g computed once per episode).
struct EpisodeContext {
  TensorF cond;
};

EpisodeContext make_episode_context(const ParamStore<float>& params, const ModelConfig& cfg,
                                    const worldsim::Video& generated, int task_index);

// One greedy control step. The observation window must hold cfg.history
// frames (front-padded upstream). Track heads are never touched here.
worldsim::ContinuousAction act(const ParamStore<float>& params, const ModelConfig& cfg,
                               const EpisodeContext& ctx,
                               const std::vector<const worldsim::Frame*>& window,
                               const ActionBounds& bounds);

}  // namespace genact::policy
