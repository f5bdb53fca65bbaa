#include "genact/taskbank/types.hpp"

#include "genact/core/error.hpp"

namespace genact::taskbank {

const char* level_name(GenLevel l) {
  switch (l) {
    case GenLevel::MG: return "MG";
    case GenLevel::G: return "G";
    case GenLevel::OTG: return "OTG";
    case GenLevel::MTG: return "MTG";
  }
  return "MG";
}

GenLevel level_from_name(const std::string& s) {
  if (s == "MG") return GenLevel::MG;
  if (s == "G") return GenLevel::G;
  if (s == "OTG") return GenLevel::OTG;
  if (s == "MTG") return GenLevel::MTG;
  raise(ErrorCode::InvalidInput, "unknown level: " + s);
}

const char* motion_name(MotionType m) {
  switch (m) {
    case MotionType::push: return "push";
    case MotionType::pick_place: return "pick_place";
    case MotionType::open_articulated: return "open_articulated";
    case MotionType::close_articulated: return "close_articulated";
    case MotionType::wipe: return "wipe";
    case MotionType::press: return "press";
  }
  return "push";
}

MotionType motion_from_name(const std::string& s) {
  for (int i = 0; i <= static_cast<int>(MotionType::press); ++i) {
    auto m = static_cast<MotionType>(i);
    if (s == motion_name(m)) return m;
  }
  raise(ErrorCode::InvalidInput, "unknown motion: " + s);
}

const char* predicate_kind_name(PredicateKind k) {
  switch (k) {
    case PredicateKind::proximity: return "proximity";
    case PredicateKind::articulation_above: return "articulation_above";
    case PredicateKind::articulation_below: return "articulation_below";
    case PredicateKind::region_cleared: return "region_cleared";
  }
  return "proximity";
}

PredicateKind predicate_kind_from_name(const std::string& s) {
  for (int i = 0; i <= static_cast<int>(PredicateKind::region_cleared); ++i) {
    auto k = static_cast<PredicateKind>(i);
    if (s == predicate_kind_name(k)) return k;
  }
  raise(ErrorCode::InvalidInput, "unknown predicate kind: " + s);
}

}  // namespace genact::taskbank
