#pragma once

#include <string>
#include <vector>

#include "genact/autodiff/params.hpp"
#include "genact/autodiff/tape.hpp"

namespace genact::autodiff {

// Binds a tape to a parameter store for one forward/backward pass. Parameter
// leaves are created lazily on first use; grads are read back by store index.
template <typename T>
class Graph {
 public:
  using Id = typename Tape<T>::Id;

  explicit Graph(const ParamStore<T>& params) : params_(&params) {
    leaf_ids_.assign(static_cast<size_t>(params.size()), -1);
  }

  Tape<T>& tape() { return tape_; }

  Id p(const std::string& name) {
    int idx = params_->index(name);
    auto& id = leaf_ids_[static_cast<size_t>(idx)];
    if (id < 0) id = tape_.leaf(params_->at(idx));
    return id;
  }

  Id input(Tensor<T> value) { return tape_.leaf(std::move(value)); }

  void backward(Id loss) { tape_.backward(loss); }

  // Adds d(loss)/d(param[i]) into grads[i] for every parameter touched by the
  // graph; untouched parameters receive nothing (gradient zero).
  void accumulate_param_grads(std::vector<Tensor<T>>& grads) const {
    for (size_t i = 0; i < leaf_ids_.size(); ++i) {
      if (leaf_ids_[i] < 0) continue;
      const auto& g = tape_.grad(leaf_ids_[i]);
      auto& dst = grads[i];
      if (dst.numel() == 0) dst = Tensor<T>(params_->at(static_cast<int>(i)).shape);
      for (int64_t k = 0; k < g.numel(); ++k) dst.data[k] += g.data[k];
    }
  }

  // y = LayerNorm(x) * gamma + beta with params at <prefix>.gamma/.beta
  Id layer_norm(Id x, const std::string& prefix) {
    return tape_.layer_norm(x, p(prefix + ".gamma"), p(prefix + ".beta"));
  }

  // y = x W + b with params at <prefix>.w/.b
  Id linear(Id x, const std::string& prefix) {
    return tape_.add_bias(tape_.matmul(x, p(prefix + ".w")), p(prefix + ".b"));
  }

  const ParamStore<T>& params() const { return *params_; }

 private:
  Tape<T> tape_;
  const ParamStore<T>* params_;
  std::vector<Id> leaf_ids_;
};

// Registers LayerNorm parameters.
template <typename T>
void add_layer_norm(ParamStore<T>& s, const std::string& prefix, int d) {
  s.add(prefix + ".gamma", ones<T>({1, d}));
  s.add(prefix + ".beta", Tensor<T>({1, d}));
}

template <typename T>
void add_linear(ParamStore<T>& s, const std::string& prefix, int din, int dout, Rng& rng,
                double stddev = 0.02) {
  s.add(prefix + ".w", randn<T>({din, dout}, rng, stddev));
  s.add(prefix + ".b", Tensor<T>({1, dout}));
}

}  // namespace genact::autodiff
