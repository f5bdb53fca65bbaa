#pragma once

#include <string>
#include <vector>

#include "genact/autodiff/graph.hpp"
#include "genact/core/probe.hpp"
#include "genact/model_config.hpp"
#include "genact/perception/encoder.hpp"
#include "genact/worldsim/render.hpp"
#include "genact/worldsim/tracks.hpp"
#include "genact/worldsim/world.hpp"

namespace genact::trackhead {

using autodiff::Graph;
using autodiff::ParamStore;
using perception::Stream;

inline const char* head_prefix(Stream s) { return s == Stream::generated ? "track_g" : "track_r"; }
inline int track_horizon(Stream s, const ModelConfig& cfg) {
  return s == Stream::generated ? cfg.video_frames : cfg.history;
}

// ---- point sampling -----------------------------------------------------------

enum class PointStrategy { uniform, on_object };
inline const char* strategy_name(PointStrategy s) {
  return s == PointStrategy::uniform ? "uniform" : "on_object";
}
inline PointStrategy strategy_from_name(const std::string& s) {
  if (s == "uniform") return PointStrategy::uniform;
  if (s == "on_object") return PointStrategy::on_object;
  raise(ErrorCode::InvalidInput, "unknown point strategy: " + s);
}

// Seeded query points in the first frame: i.i.d. uniform over the image, or
// uniform over pixels covered by objects (falls back to uniform with a
// warning when the object mask is empty).
worldsim::PointSet sample_points(const worldsim::WorldState& state, int count, uint64_t seed,
                                 PointStrategy strategy, const worldsim::SimConfig& cfg);

// ---- parameters ----------------------------------------------------------------

template <typename T>
void init_trackhead_params(ParamStore<T>& s, Stream which, const ModelConfig& cfg, Rng& rng) {
  std::string p = head_prefix(which);
  int d = cfg.embed_dim;
  autodiff::add_linear(s, p + ".coord.fc1", 2, d, rng);
  autodiff::add_linear(s, p + ".coord.fc2", d, d, rng);
  s.add(p + ".type", autodiff::randn<T>({2, d}, rng));
  for (int i = 0; i < cfg.track_layers; ++i)
    perception::add_self_attention_block(s, p + ".blk" + std::to_string(i), d, cfg.mlp_ratio,
                                         rng);
  autodiff::add_linear(s, p + ".head", d, track_horizon(which, cfg) * 2, rng);
}

// ---- forward -------------------------------------------------------------------

// Predicts per-point tracks as offsets from the query coordinates.
// anchor_features: first-frame patch tokens [patches, D]; tokens: resampled
// latents [N, D]. Returns predicted coordinates [P * T_out, 2] in [0,1].
template <typename T>
typename Graph<T>::Id predict_tracks(Graph<T>& g, Stream which,
                                     const worldsim::PointSet& points,
                                     typename Graph<T>::Id anchor_features,
                                     typename Graph<T>::Id tokens, const ModelConfig& cfg) {
  probe::hit("trackhead.predict_tracks");
  auto& t = g.tape();
  std::string p = head_prefix(which);
  int P = points.size();
  int T_out = track_horizon(which, cfg);

  Tensor<T> coords({P, 2});
  std::vector<std::pair<T, T>> pts;
  pts.reserve(static_cast<size_t>(P));
  for (int i = 0; i < P; ++i) {
    coords.at(i, 0) = static_cast<T>(points.coords[static_cast<size_t>(i)].x);
    coords.at(i, 1) = static_cast<T>(points.coords[static_cast<size_t>(i)].y);
    pts.emplace_back(coords.at(i, 0), coords.at(i, 1));
  }
  auto coord_in = g.input(coords);
  auto e = t.gelu(g.linear(coord_in, p + ".coord.fc1"));
  e = g.linear(e, p + ".coord.fc2");
  auto sampled = t.bilinear_sample(anchor_features, cfg.grid(), cfg.grid(), pts);
  auto point_tokens = t.add(e, sampled);
  point_tokens = t.add_segment_rows(point_tokens, t.slice_rows(g.p(p + ".type"), 0, 1), P);
  auto latent_tokens =
      t.add_segment_rows(tokens, t.slice_rows(g.p(p + ".type"), 1, 1), cfg.num_latents);

  auto x = t.concat_rows(point_tokens, latent_tokens);
  for (int i = 0; i < cfg.track_layers; ++i)
    x = perception::self_attention_block(g, x, p + ".blk" + std::to_string(i), cfg.track_heads);
  auto point_out = t.slice_rows(x, 0, P);
  auto offsets = g.linear(point_out, p + ".head");   // [P, T_out*2]
  auto flat = t.reshape(offsets, P * T_out, 2);

  // repeat each query coordinate T_out times and add
  Tensor<T> rep({P * T_out, 2});
  for (int i = 0; i < P; ++i)
    for (int j = 0; j < T_out; ++j) {
      rep.at(i * T_out + j, 0) = coords.at(i, 0);
      rep.at(i * T_out + j, 1) = coords.at(i, 1);
    }
  auto pred = t.add(flat, g.input(std::move(rep)));
  return t.clamp(pred, T(0), T(1));
}

// Visibility-masked mean Euclidean error against oracle tracks.
// truth must hold P * T_out entries matching the prediction layout.
template <typename T>
typename Graph<T>::Id track_loss(Graph<T>& g, typename Graph<T>::Id predicted,
                                 const worldsim::TrackSet& truth, bool* degenerate = nullptr) {
  probe::hit("trackhead.track_loss");
  int n = g.tape().val(predicted).shape[0];
  if (truth.num_points * truth.length != n)
    raise(ErrorCode::ShapeError, "track_loss: truth/prediction shapes differ");
  std::vector<T> flat(static_cast<size_t>(n) * 2);
  std::vector<uint8_t> vis(static_cast<size_t>(n));
  int visible = 0;
  for (int p = 0; p < truth.num_points; ++p)
    for (int s = 0; s < truth.length; ++s) {
      int row = p * truth.length + s;
      flat[static_cast<size_t>(2 * row)] = static_cast<T>(truth.at(p, s).x);
      flat[static_cast<size_t>(2 * row) + 1] = static_cast<T>(truth.at(p, s).y);
      vis[static_cast<size_t>(row)] = truth.vis(p, s);
      visible += truth.vis(p, s) ? 1 : 0;
    }
  if (degenerate) *degenerate = visible == 0;
  return g.tape().masked_l2(predicted, flat, vis);
}

}  // namespace genact::trackhead
