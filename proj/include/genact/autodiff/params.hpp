#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "genact/core/error.hpp"
#include "genact/core/rng.hpp"
#include "genact/core/tensor.hpp"

namespace genact::autodiff {

// Named parameter tensors in a stable insertion order. The order defines the
// checkpoint layout and the gradient-buffer layout.
template <typename T>
class ParamStore {
 public:
  Tensor<T>& add(const std::string& name, Tensor<T> t) {
    if (index_.count(name)) raise(ErrorCode::InvalidInput, "duplicate param " + name);
    index_[name] = static_cast<int>(names_.size());
    names_.push_back(name);
    tensors_.push_back(std::move(t));
    return tensors_.back();
  }

  bool has(const std::string& name) const { return index_.count(name) > 0; }

  int index(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) raise(ErrorCode::NotFound, "param " + name);
    return it->second;
  }

  Tensor<T>& at(const std::string& name) { return tensors_[static_cast<size_t>(index(name))]; }
  const Tensor<T>& at(const std::string& name) const {
    return tensors_[static_cast<size_t>(index(name))];
  }

  Tensor<T>& at(int i) { return tensors_[static_cast<size_t>(i)]; }
  const Tensor<T>& at(int i) const { return tensors_[static_cast<size_t>(i)]; }

  const std::vector<std::string>& names() const { return names_; }
  int size() const { return static_cast<int>(names_.size()); }

  int64_t total_elements() const {
    int64_t n = 0;
    for (const auto& t : tensors_) n += t.numel();
    return n;
  }

  template <typename U>
  ParamStore<U> cast() const {
    ParamStore<U> out;
    for (int i = 0; i < size(); ++i) out.add(names_[static_cast<size_t>(i)], at(i).template cast<U>());
    return out;
  }

 private:
  std::vector<std::string> names_;
  std::vector<Tensor<T>> tensors_;
  std::unordered_map<std::string, int> index_;
};

// Common initializers.
template <typename T>
Tensor<T> randn(std::vector<int> shape, Rng& rng, double stddev = 0.02) {
  Tensor<T> t(std::move(shape));
  for (auto& v : t.data) v = static_cast<T>(rng.normal(0.0, stddev));
  return t;
}

template <typename T>
Tensor<T> ones(std::vector<int> shape) {
  return Tensor<T>::full(std::move(shape), T(1));
}

}  // namespace genact::autodiff
