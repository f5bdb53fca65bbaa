#include "genact/policy/pipeline.hpp"

#include "genact/core/error.hpp"

namespace genact::policy {

using worldsim::ContinuousAction;
using worldsim::Frame;
using worldsim::GripperCmd;

EpisodeContext make_episode_context(const ParamStore<float>& params, const ModelConfig& cfg,
                                    const worldsim::Video& generated, int task_index) {
  Graph<float> g(params);
  std::vector<const Frame*> frames;
  if (cfg.variant != PolicyVariant::language_only) {
    if (generated.empty()) raise(ErrorCode::InvalidInput, "empty generated video");
    auto idx = perception::sample_video_frames(static_cast<int>(generated.size()),
                                               cfg.video_frames);
    for (int i : idx) frames.push_back(&generated[static_cast<size_t>(i)]);
  }
  auto cond = condition_tokens<float>(g, frames, task_index, cfg);
  EpisodeContext ctx;
  ctx.cond = g.tape().val(cond);
  return ctx;
}

ContinuousAction act(const ParamStore<float>& params, const ModelConfig& cfg,
                     const EpisodeContext& ctx, const std::vector<const Frame*>& window,
                     const ActionBounds& bounds) {
  if (ctx.cond.numel() == 0) raise(ErrorCode::NotReady, "episode context not initialized");
  if (static_cast<int>(window.size()) != cfg.history)
    raise(ErrorCode::InvalidInput, "window must hold history frames");
  Graph<float> g(params);
  auto toks = encode_frames<float>(g, window, cfg);
  auto z_r = perception::resample(g, perception::Stream::robot, toks, cfg);
  auto cond = g.input(ctx.cond);
  auto logits = decoder_forward<float>(g, cond, z_r, cfg);

  const auto& delta = g.tape().val(logits.delta);
  const auto& grip = g.tape().val(logits.gripper);
  const auto& term = g.tape().val(logits.terminate);
  ContinuousAction a;
  a.dx = undiscretize(argmax_row(delta, 0), bounds);
  a.dy = undiscretize(argmax_row(delta, 1), bounds);
  a.gripper = argmax_row(grip, 0) == 1 ? GripperCmd::close : GripperCmd::open;
  a.terminate = argmax_row(term, 0) == 1;
  return a;
}

}  // namespace genact::policy
