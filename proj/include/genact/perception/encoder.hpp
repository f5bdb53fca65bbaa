#pragma once

#include <string>
#include <vector>

#include "genact/autodiff/graph.hpp"
#include "genact/model_config.hpp"
#include "genact/worldsim/types.hpp"

namespace genact::perception {

using autodiff::Graph;
using autodiff::ParamStore;

enum class Stream { generated, robot };
inline const char* stream_prefix(Stream s) { return s == Stream::generated ? "res_g" : "res_r"; }

// ---- parameter registration --------------------------------------------------

template <typename T>
void add_self_attention_block(ParamStore<T>& s, const std::string& prefix, int d, int mlp_ratio,
                              Rng& rng) {
  autodiff::add_layer_norm(s, prefix + ".ln1", d);
  autodiff::add_linear(s, prefix + ".attn.q", d, d, rng);
  autodiff::add_linear(s, prefix + ".attn.k", d, d, rng);
  autodiff::add_linear(s, prefix + ".attn.v", d, d, rng);
  autodiff::add_linear(s, prefix + ".attn.o", d, d, rng);
  autodiff::add_layer_norm(s, prefix + ".ln2", d);
  autodiff::add_linear(s, prefix + ".mlp.fc1", d, d * mlp_ratio, rng);
  autodiff::add_linear(s, prefix + ".mlp.fc2", d * mlp_ratio, d, rng);
}

template <typename T>
void init_encoder_params(ParamStore<T>& s, const ModelConfig& cfg, Rng& rng) {
  int d = cfg.embed_dim;
  int patch_dim = cfg.patch_size * cfg.patch_size * 3;
  autodiff::add_linear(s, "chi.patch", patch_dim, d, rng);
  s.add("chi.pos", autodiff::randn<T>({cfg.patches_per_frame(), d}, rng));
  for (int i = 0; i < cfg.vit_layers; ++i)
    add_self_attention_block(s, "chi.blk" + std::to_string(i), d, cfg.mlp_ratio, rng);
}

template <typename T>
void init_resampler_params(ParamStore<T>& s, Stream which, const ModelConfig& cfg, Rng& rng) {
  std::string p = stream_prefix(which);
  int d = cfg.embed_dim;
  s.add(p + ".latents", autodiff::randn<T>({cfg.num_latents, d}, rng));
  s.add(p + ".time", autodiff::randn<T>({cfg.max_frames, d}, rng));
  for (int i = 0; i < cfg.resampler_layers; ++i) {
    std::string b = p + ".blk" + std::to_string(i);
    s.add(b + ".attn_gate", Tensor<T>({1, 1}));  // tanh(0) = 0: identity at init
    s.add(b + ".ff_gate", Tensor<T>({1, 1}));
    autodiff::add_layer_norm(s, b + ".ln_q", d);
    autodiff::add_layer_norm(s, b + ".ln_kv", d);
    autodiff::add_linear(s, b + ".attn.q", d, d, rng);
    autodiff::add_linear(s, b + ".attn.k", d, d, rng);
    autodiff::add_linear(s, b + ".attn.v", d, d, rng);
    autodiff::add_linear(s, b + ".attn.o", d, d, rng);
    autodiff::add_layer_norm(s, b + ".ln_ff", d);
    autodiff::add_linear(s, b + ".ff.fc1", d, d * cfg.mlp_ratio, rng);
    autodiff::add_linear(s, b + ".ff.fc2", d * cfg.mlp_ratio, d, rng);
  }
}

// ---- forward ------------------------------------------------------------------

// Flattens a frame into per-patch rows (grid row-major; pixels row-major
// within a patch, channels innermost).
template <typename T>
Tensor<T> patch_matrix(const worldsim::Frame& frame, const ModelConfig& cfg) {
  if (frame.h != cfg.image_size || frame.w != cfg.image_size)
    raise(ErrorCode::ShapeError, "frame size does not match config");
  int g = cfg.grid();
  int ps = cfg.patch_size;
  Tensor<T> m({g * g, ps * ps * 3});
  for (int gy = 0; gy < g; ++gy)
    for (int gx = 0; gx < g; ++gx) {
      int row = gy * g + gx;
      int col = 0;
      for (int py = 0; py < ps; ++py)
        for (int px = 0; px < ps; ++px)
          for (int c = 0; c < 3; ++c)
            m.at(row, col++) = static_cast<T>(frame.at(gy * ps + py, gx * ps + px, c));
    }
  return m;
}

template <typename T>
typename Graph<T>::Id self_attention_block(Graph<T>& g, typename Graph<T>::Id x,
                                           const std::string& prefix, int heads) {
  auto& t = g.tape();
  auto h = g.layer_norm(x, prefix + ".ln1");
  auto q = g.linear(h, prefix + ".attn.q");
  auto k = g.linear(h, prefix + ".attn.k");
  auto v = g.linear(h, prefix + ".attn.v");
  auto att = g.linear(t.attention(q, k, v, heads), prefix + ".attn.o");
  x = t.add(x, att);
  auto m = g.layer_norm(x, prefix + ".ln2");
  m = t.gelu(g.linear(m, prefix + ".mlp.fc1"));
  m = g.linear(m, prefix + ".mlp.fc2");
  return t.add(x, m);
}

// Patch projection plus learned 2-d positional embeddings (no attention yet).
template <typename T>
typename Graph<T>::Id encode_patches(Graph<T>& g, const worldsim::Frame& frame,
                                     const ModelConfig& cfg) {
  auto x = g.input(patch_matrix<T>(frame, cfg));
  x = g.tape().add_bias(g.tape().matmul(x, g.p("chi.patch.w")), g.p("chi.patch.b"));
  return g.tape().add(x, g.p("chi.pos"));
}

// Full frame encoder: patch embedding followed by the self-attention stack.
template <typename T>
typename Graph<T>::Id encode_frame(Graph<T>& g, const worldsim::Frame& frame,
                                   const ModelConfig& cfg) {
  auto x = encode_patches(g, frame, cfg);
  for (int i = 0; i < cfg.vit_layers; ++i)
    x = self_attention_block(g, x, "chi.blk" + std::to_string(i), cfg.vit_heads);
  return x;
}

// Perceiver-resampler: N latent queries attend over all frame tokens through
// gated cross-attention blocks. Output is always [num_latents, D].
template <typename T>
typename Graph<T>::Id resample(Graph<T>& g, Stream which,
                               const std::vector<typename Graph<T>::Id>& frame_tokens,
                               const ModelConfig& cfg) {
  if (frame_tokens.empty()) raise(ErrorCode::InvalidInput, "resample: zero frames");
  if (static_cast<int>(frame_tokens.size()) > cfg.max_frames)
    raise(ErrorCode::InvalidInput, "resample: more frames than max_frames");
  auto& t = g.tape();
  std::string p = stream_prefix(which);

  auto x = frame_tokens[0];
  for (size_t i = 1; i < frame_tokens.size(); ++i) x = t.concat_rows(x, frame_tokens[i]);
  x = t.add_segment_rows(x, g.p(p + ".time"), cfg.patches_per_frame());

  auto z = g.p(p + ".latents");
  for (int i = 0; i < cfg.resampler_layers; ++i) {
    std::string b = p + ".blk" + std::to_string(i);
    auto zq = g.layer_norm(z, b + ".ln_q");
    auto xk = g.layer_norm(x, b + ".ln_kv");
    auto q = g.linear(zq, b + ".attn.q");
    auto k = g.linear(xk, b + ".attn.k");
    auto v = g.linear(xk, b + ".attn.v");
    auto att = g.linear(t.attention(q, k, v, cfg.resampler_heads), b + ".attn.o");
    z = t.gated_add(z, att, g.p(b + ".attn_gate"));
    auto f = g.layer_norm(z, b + ".ln_ff");
    f = t.gelu(g.linear(f, b + ".ff.fc1"));
    f = g.linear(f, b + ".ff.fc2");
    z = t.gated_add(z, f, g.p(b + ".ff_gate"));
  }
  return z;
}

}  // namespace genact::perception
