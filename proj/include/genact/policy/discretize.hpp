#pragma once

#include <cmath>
#include <vector>

#include "genact/core/error.hpp"
#include "genact/worldsim/types.hpp"

namespace genact::policy {

struct ActionBounds {
  double low = -0.05;
  double high = 0.05;
  int bin_count = 256;

  double bin_width() const { return (high - low) / bin_count; }
};

// Half-open uniform bins [low + j*w, low + (j+1)*w); the upper bound maps to
// the last bin. Out-of-bounds values clamp first.
inline int discretize(double x, const ActionBounds& b) {
  if (x <= b.low) return 0;
  if (x >= b.high) return b.bin_count - 1;
  int bin = static_cast<int>(std::floor((x - b.low) / b.bin_width()));
  return bin >= b.bin_count ? b.bin_count - 1 : bin;
}

// Bin midpoint.
inline double undiscretize(int bin, const ActionBounds& b) {
  if (bin < 0 || bin >= b.bin_count) raise(ErrorCode::InvalidInput, "bin out of range");
  return b.low + (bin + 0.5) * b.bin_width();
}

// Discretized action chunk: per-step bins for (dx, dy), gripper, terminate.
struct ActionBins {
  std::vector<int> delta;      // h*2, interleaved (dx, dy)
  std::vector<int> gripper;    // h, 0 = open, 1 = close
  std::vector<int> terminate;  // h, 0/1
  int steps() const { return static_cast<int>(gripper.size()); }
};

inline ActionBins discretize_chunk(const std::vector<worldsim::ContinuousAction>& actions,
                                   const ActionBounds& b) {
  ActionBins out;
  for (const auto& a : actions) {
    out.delta.push_back(discretize(a.dx, b));
    out.delta.push_back(discretize(a.dy, b));
    out.gripper.push_back(a.gripper == worldsim::GripperCmd::close ? 1 : 0);
    out.terminate.push_back(a.terminate ? 1 : 0);
  }
  return out;
}

}  // namespace genact::policy
