#pragma once

#include <string>
#include <vector>

#include "genact/autodiff/graph.hpp"
#include "genact/model_config.hpp"
#include "genact/perception/encoder.hpp"
#include "genact/policy/discretize.hpp"

namespace genact::policy {

using autodiff::Graph;
using autodiff::ParamStore;

// ---- parameters ----------------------------------------------------------------

template <typename T>
void init_policy_params(ParamStore<T>& s, const ModelConfig& cfg, Rng& rng) {
  int d = cfg.embed_dim;
  if (cfg.variant == PolicyVariant::language_only)
    s.add("lang.embed", autodiff::randn<T>({cfg.num_tasks, d}, rng));
  int seq = cfg.cond_tokens() + cfg.num_latents + cfg.chunk;
  s.add("dec.pos", autodiff::randn<T>({seq, d}, rng));
  s.add("dec.readout", autodiff::randn<T>({cfg.chunk, d}, rng));
  for (int i = 0; i < cfg.decoder_layers; ++i)
    perception::add_self_attention_block(s, "dec.blk" + std::to_string(i), d, cfg.mlp_ratio, rng);
  autodiff::add_linear(s, "dec.head_delta", d, 2 * cfg.action_bins, rng);
  autodiff::add_linear(s, "dec.head_grip", d, 2, rng);
  autodiff::add_linear(s, "dec.head_term", d, 2, rng);
}

// ---- forward -------------------------------------------------------------------

template <typename T>
struct PolicyLogits {
  typename Graph<T>::Id delta;      // [2h, bins], rows ordered (step0 dx, step0 dy, ...)
  typename Graph<T>::Id gripper;    // [h, 2]
  typename Graph<T>::Id terminate;  // [h, 2]
};

// Action decoder: attends over [cond || z_r || readout queries]; readout
// token j produces step-j logits.
template <typename T>
PolicyLogits<T> decoder_forward(Graph<T>& g, typename Graph<T>::Id cond,
                                typename Graph<T>::Id z_r, const ModelConfig& cfg) {
  auto& t = g.tape();
  if (t.val(cond).shape[0] != cfg.cond_tokens())
    raise(ErrorCode::InvalidInput, "decoder: conditioning token count");
  if (t.val(z_r).shape[0] != cfg.num_latents)
    raise(ErrorCode::InvalidInput, "decoder: robot token count");
  auto x = t.concat_rows(t.concat_rows(cond, z_r), g.p("dec.readout"));
  x = t.add(x, g.p("dec.pos"));
  for (int i = 0; i < cfg.decoder_layers; ++i)
    x = perception::self_attention_block(g, x, "dec.blk" + std::to_string(i), cfg.decoder_heads);
  auto readout = t.slice_rows(x, cfg.cond_tokens() + cfg.num_latents, cfg.chunk);
  PolicyLogits<T> out;
  out.delta = t.reshape(g.linear(readout, "dec.head_delta"), 2 * cfg.chunk, cfg.action_bins);
  out.gripper = g.linear(readout, "dec.head_grip");
  out.terminate = g.linear(readout, "dec.head_term");
  return out;
}

// Language-only conditioning: one learned embedding row per train task,
// row 0 for unknown ids.
template <typename T>
typename Graph<T>::Id language_condition(Graph<T>& g, int task_index, const ModelConfig& cfg) {
  if (task_index < 0 || task_index >= cfg.num_tasks)
    raise(ErrorCode::InvalidInput, "task index out of embedding range");
  return g.tape().slice_rows(g.p("lang.embed"), task_index, 1);
}

// ---- behavior-cloning loss ------------------------------------------------------

template <typename T>
struct BCLossParts {
  typename Graph<T>::Id delta;      // mean CE over the 2h delta heads
  typename Graph<T>::Id gripper;    // mean CE over the h gripper heads
  typename Graph<T>::Id terminate;  // mean CE over the h terminate heads
  typename Graph<T>::Id total;      // mean over all (step, head) pairs
};

template <typename T>
BCLossParts<T> bc_loss(Graph<T>& g, const PolicyLogits<T>& logits, const ActionBins& target) {
  auto& t = g.tape();
  if (static_cast<int>(target.delta.size()) != t.val(logits.delta).shape[0] ||
      target.steps() != t.val(logits.gripper).shape[0])
    raise(ErrorCode::ShapeError, "bc_loss: target shape");
  BCLossParts<T> out;
  out.delta = t.cross_entropy(logits.delta, target.delta);
  out.gripper = t.cross_entropy(logits.gripper, target.gripper);
  out.terminate = t.cross_entropy(logits.terminate, target.terminate);
  // (2h * delta_mean + h * grip_mean + h * term_mean) / 4h
  auto half = t.axpy_scalar(T(0.5), out.delta, T(0.25), out.gripper);
  out.total = t.axpy_scalar(T(1), half, T(0.25), out.terminate);
  return out;
}

// Greedy per-head argmax at chunk step 0; ties break toward the lower index.
template <typename T>
int argmax_row(const Tensor<T>& m, int row) {
  int best = 0;
  for (int j = 1; j < m.shape[1]; ++j)
    if (m.at(row, j) > m.at(row, best)) best = j;
  return best;
}

}  // namespace genact::policy
