#include <doctest.h>

#include <cmath>

#include "genact/core/probe.hpp"
#include "genact/core/rng.hpp"
#include "genact/taskbank/registry.hpp"
#include "genact/trackhead/trackhead.hpp"
#include "genact/worldsim/world.hpp"
#include "helpers.hpp"

using namespace genact;
using namespace genact::trackhead;
using autodiff::Graph;
using autodiff::ParamStore;
using genact::testing::tiny_config;
using perception::Stream;
using worldsim::PointSet;
using worldsim::SimConfig;
using worldsim::TrackSet;
using worldsim::Vec2;

namespace {

template <typename T>
ParamStore<T> make_params(const ModelConfig& cfg, uint64_t seed) {
  ParamStore<T> s;
  Rng rng(seed);
  perception::init_encoder_params(s, cfg, rng);
  perception::init_resampler_params(s, Stream::generated, cfg, rng);
  init_trackhead_params(s, Stream::generated, cfg, rng);
  return s;
}

TrackSet constant_tracks(const PointSet& pts, int T) {
  TrackSet t;
  t.num_points = pts.size();
  t.length = T;
  t.coords.resize(static_cast<size_t>(t.num_points) * T);
  t.visibility.assign(static_cast<size_t>(t.num_points) * T, 1);
  for (int p = 0; p < t.num_points; ++p)
    for (int s = 0; s < T; ++s) t.at(p, s) = pts.coords[static_cast<size_t>(p)];
  return t;
}

}  // namespace

TEST_CASE("sample_points: determinism, distribution, containment") {
  SimConfig cfg;
  auto bank = taskbank::default_registry();
  auto state = worldsim::reset(bank.task("push_rc_bs"), 3, cfg);

  auto a = sample_points(state, 32, 5, PointStrategy::uniform, cfg);
  auto b = sample_points(state, 32, 5, PointStrategy::uniform, cfg);
  REQUIRE(a.size() == b.size());
  for (int i = 0; i < a.size(); ++i) {
    CHECK(a.coords[static_cast<size_t>(i)].x == b.coords[static_cast<size_t>(i)].x);
    CHECK(a.coords[static_cast<size_t>(i)].y == b.coords[static_cast<size_t>(i)].y);
  }

  // law of large numbers: empirical mean near (0.5, 0.5)
  auto big = sample_points(state, 10000, 7, PointStrategy::uniform, cfg);
  double mx = 0, my = 0;
  for (const auto& p : big.coords) {
    mx += p.x;
    my += p.y;
  }
  mx /= big.size();
  my /= big.size();
  CHECK(std::abs(mx - 0.5) < 0.02);
  CHECK(std::abs(my - 0.5) < 0.02);

  // on_object points lie inside some object's mask
  auto on = sample_points(state, 64, 11, PointStrategy::on_object, cfg);
  for (const auto& p : on.coords) {
    bool inside = false;
    for (const auto& o : state.objects) inside |= worldsim::object_contains(o, p, cfg.travel);
    CHECK(inside);
  }

  // empty mask falls back to uniform
  worldsim::WorldState empty;
  auto fb = sample_points(empty, 8, 13, PointStrategy::on_object, cfg);
  CHECK(fb.size() == 8);

  CHECK_THROWS_AS(sample_points(state, 0, 1, PointStrategy::uniform, cfg), Error);
}

TEST_CASE("predict_tracks: shape and clamp contract") {
  auto cfg = tiny_config();
  auto params = make_params<float>(cfg, 3);
  Graph<float> g(params);
  worldsim::Frame f(cfg.image_size, cfg.image_size);
  Rng rng(5);
  for (auto& v : f.px) v = static_cast<float>(rng.uniform());
  auto anchor = perception::encode_frame(g, f, cfg);
  auto tokens = perception::resample(g, Stream::generated, {anchor}, cfg);

  PointSet pts;
  for (int i = 0; i < cfg.track_points; ++i) pts.coords.push_back({rng.uniform(), rng.uniform()});
  auto pred = predict_tracks(g, Stream::generated, pts, anchor, tokens, cfg);
  const auto& v = g.tape().val(pred);
  CHECK(v.shape == std::vector<int>{cfg.track_points * cfg.video_frames, 2});
  for (auto x : v.data) {
    CHECK(x >= 0.f);
    CHECK(x <= 1.f);
  }
}

TEST_CASE("predict_tracks: zero offset head keeps tracks at the query points") {
  auto cfg = tiny_config();
  auto params = make_params<float>(cfg, 7);
  for (auto& v : params.at("track_g.head.w").data) v = 0.f;
  for (auto& v : params.at("track_g.head.b").data) v = 0.f;
  Graph<float> g(params);
  worldsim::Frame f(cfg.image_size, cfg.image_size);
  auto anchor = perception::encode_frame(g, f, cfg);
  auto tokens = perception::resample(g, Stream::generated, {anchor}, cfg);
  PointSet pts;
  Rng rng(9);
  for (int i = 0; i < cfg.track_points; ++i) pts.coords.push_back({rng.uniform(), rng.uniform()});
  auto pred = predict_tracks(g, Stream::generated, pts, anchor, tokens, cfg);
  const auto& v = g.tape().val(pred);
  for (int p = 0; p < cfg.track_points; ++p)
    for (int t = 0; t < cfg.video_frames; ++t) {
      CHECK(v.at(p * cfg.video_frames + t, 0) ==
            doctest::Approx(pts.coords[static_cast<size_t>(p)].x).epsilon(1e-6));
      CHECK(v.at(p * cfg.video_frames + t, 1) ==
            doctest::Approx(pts.coords[static_cast<size_t>(p)].y).epsilon(1e-6));
    }
}

TEST_CASE("track_loss: stated analytic values") {
  auto cfg = tiny_config();
  auto params = make_params<double>(cfg, 11);
  // single point, single visible step, error (0.3, 0.4) -> 0.5
  {
    Graph<double> g(params);
    Tensor<double> pred({1, 2});
    pred.at(0, 0) = 0.3;
    pred.at(0, 1) = 0.4;
    auto id = g.input(pred);
    TrackSet truth;
    truth.num_points = 1;
    truth.length = 1;
    truth.coords = {{0.0, 0.0}};
    truth.visibility = {1};
    auto loss = track_loss(g, id, truth);
    CHECK(std::abs(g.tape().val(loss).at(0, 0) - 0.5) <= 1e-9);
  }
  // two points, errors 0.5 and 0.1, T=1 -> mean 0.3
  {
    Graph<double> g(params);
    Tensor<double> pred({2, 2});
    pred.at(0, 0) = 0.5;
    pred.at(1, 0) = 0.1;
    auto id = g.input(pred);
    TrackSet truth;
    truth.num_points = 2;
    truth.length = 1;
    truth.coords = {{0.0, 0.0}, {0.0, 0.0}};
    truth.visibility = {1, 1};
    auto loss = track_loss(g, id, truth);
    CHECK(std::abs(g.tape().val(loss).at(0, 0) - 0.3) <= 1e-9);
  }
  // truth == prediction -> 0 (within the smoothing epsilon)
  {
    Graph<double> g(params);
    Tensor<double> pred({1, 2});
    pred.at(0, 0) = 0.25;
    pred.at(0, 1) = 0.75;
    auto id = g.input(pred);
    TrackSet truth;
    truth.num_points = 1;
    truth.length = 1;
    truth.coords = {{0.25, 0.75}};
    truth.visibility = {1};
    auto loss = track_loss(g, id, truth);
    CHECK(std::abs(g.tape().val(loss).at(0, 0)) <= 1e-9);
  }
  // nothing visible -> loss 0 and degenerate flag
  {
    Graph<double> g(params);
    Tensor<double> pred({1, 2});
    pred.at(0, 0) = 0.9;
    auto id = g.input(pred);
    TrackSet truth;
    truth.num_points = 1;
    truth.length = 1;
    truth.coords = {{0.0, 0.0}};
    truth.visibility = {0};
    bool degenerate = false;
    auto loss = track_loss(g, id, truth, &degenerate);
    CHECK(g.tape().val(loss).at(0, 0) == 0.0);
    CHECK(degenerate);
  }
}

TEST_CASE("track_loss: perturbing invisible pairs changes nothing") {
  auto cfg = tiny_config();
  auto params = make_params<double>(cfg, 13);
  Rng rng(17);
  PointSet pts;
  for (int i = 0; i < 3; ++i) pts.coords.push_back({rng.uniform(), rng.uniform()});
  TrackSet truth = constant_tracks(pts, 4);
  truth.vis(1, 2) = 0;
  truth.vis(2, 0) = 0;

  Tensor<double> pred({12, 2});
  for (auto& v : pred.data) v = rng.uniform();
  Graph<double> g1(params);
  auto l1 = track_loss(g1, g1.input(pred), truth);

  // perturb only the invisible rows
  Tensor<double> pred2 = pred;
  pred2.at(1 * 4 + 2, 0) += 0.37;
  pred2.at(2 * 4 + 0, 1) -= 0.21;
  Graph<double> g2(params);
  auto l2 = track_loss(g2, g2.input(pred2), truth);
  CHECK(g1.tape().val(l1).at(0, 0) == g2.tape().val(l2).at(0, 0));
}

TEST_CASE("trackhead gradient: finite differences through psi") {
  auto cfg = tiny_config();
  auto params = make_params<double>(cfg, 19);
  worldsim::Frame f(cfg.image_size, cfg.image_size);
  Rng rng(23);
  for (auto& v : f.px) v = static_cast<float>(rng.uniform());
  PointSet pts;
  for (int i = 0; i < cfg.track_points; ++i) pts.coords.push_back({rng.uniform(), rng.uniform()});
  TrackSet truth = constant_tracks(pts, cfg.video_frames);
  // shift truth so errors are O(0.1) and the sqrt is well conditioned
  for (auto& c : truth.coords) {
    c.x = std::min(1.0, c.x + 0.15);
    c.y = std::min(1.0, c.y + 0.1);
  }

  auto loss_of = [&](const ParamStore<double>& ps, std::vector<Tensor<double>>* grads) {
    Graph<double> g(ps);
    auto anchor = perception::encode_frame(g, f, cfg);
    auto tokens = perception::resample(g, Stream::generated, {anchor}, cfg);
    auto pred = predict_tracks(g, Stream::generated, pts, anchor, tokens, cfg);
    auto loss = track_loss(g, pred, truth);
    if (grads) {
      g.backward(loss);
      grads->assign(static_cast<size_t>(ps.size()), {});
      g.accumulate_param_grads(*grads);
    }
    return g.tape().val(loss).at(0, 0);
  };

  std::vector<Tensor<double>> grads;
  loss_of(params, &grads);
  const double h = 1e-5;
  for (const char* name :
       {"track_g.coord.fc1.w", "track_g.blk0.attn.q.w", "track_g.blk1.mlp.fc1.w",
        "track_g.head.w", "track_g.head.b", "track_g.type"}) {
    int pi = params.index(name);
    const auto& tensor = params.at(pi);
    double worst = 0;
    for (int64_t i = 0; i < tensor.numel(); i += std::max<int64_t>(1, tensor.numel() / 6)) {
      ParamStore<double> pp = params;
      pp.at(pi).data[i] += h;
      double up = loss_of(pp, nullptr);
      pp.at(pi).data[i] -= 2 * h;
      double dn = loss_of(pp, nullptr);
      double num = (up - dn) / (2 * h);
      double a = grads[static_cast<size_t>(pi)].numel() ? grads[static_cast<size_t>(pi)].data[i]
                                                        : 0.0;
      double rel = std::abs(a - num) / std::max({std::abs(a), std::abs(num), 1e-6});
      worst = std::max(worst, rel);
    }
    CHECK_MESSAGE(worst < 1e-4, name);
  }
}

TEST_CASE("probe records track-head calls") {
  probe::reset();
  auto cfg = tiny_config();
  auto params = make_params<float>(cfg, 29);
  Graph<float> g(params);
  worldsim::Frame f(cfg.image_size, cfg.image_size);
  auto anchor = perception::encode_frame(g, f, cfg);
  auto tokens = perception::resample(g, Stream::generated, {anchor}, cfg);
  PointSet pts;
  pts.coords.push_back({0.5, 0.5});
  PointSet pts_full;
  for (int i = 0; i < cfg.track_points; ++i) pts_full.coords.push_back({0.3, 0.4});
  predict_tracks(g, Stream::generated, pts_full, anchor, tokens, cfg);
  CHECK(probe::count("trackhead.predict_tracks") == 1);
  probe::reset();
}
