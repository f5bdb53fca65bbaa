#pragma once

#include <map>
#include <string>

namespace genact::probe {

// Lightweight call recorder used by tests to assert call-graph properties
// (e.g. no track-head op on the inference path, one video generation per
// rollout). Counters are thread-local; production code only bumps an int.
void hit(const char* name);
long count(const std::string& name);
void reset();
std::map<std::string, long> snapshot();

}  // namespace genact::probe
