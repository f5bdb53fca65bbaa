#pragma once

#include <cmath>
#include <vector>

#include "genact/core/error.hpp"

namespace genact::perception {

// Evenly spaced frame indices including both endpoints:
// indices[j] = round(j * (T-1) / (count-1)).
inline std::vector<int> sample_video_frames(int video_length, int count = 16) {
  if (video_length < 1) raise(ErrorCode::InvalidInput, "empty video");
  if (count < 2) raise(ErrorCode::InvalidInput, "sample count must be >= 2");
  std::vector<int> idx(static_cast<size_t>(count));
  for (int j = 0; j < count; ++j)
    idx[static_cast<size_t>(j)] =
        static_cast<int>(std::lround(static_cast<double>(j) * (video_length - 1) / (count - 1)));
  return idx;
}

// The last k frame indices ending at t; indices before the episode start
// repeat frame 0 (constant-length history from step one).
inline std::vector<int> window_indices(int t, int k) {
  std::vector<int> idx(static_cast<size_t>(k));
  for (int i = 0; i < k; ++i) {
    int j = t - k + 1 + i;
    idx[static_cast<size_t>(i)] = j < 0 ? 0 : j;
  }
  return idx;
}

}  // namespace genact::perception
