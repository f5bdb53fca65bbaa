#include "genact/core/probe.hpp"

namespace genact::probe {
namespace {
thread_local std::map<std::string, long> counters;
}

void hit(const char* name) { ++counters[name]; }

long count(const std::string& name) {
  auto it = counters.find(name);
  return it == counters.end() ? 0 : it->second;
}

void reset() { counters.clear(); }

std::map<std::string, long> snapshot() { return counters; }

}  // namespace genact::probe
