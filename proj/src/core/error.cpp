#include "genact/core/error.hpp"

namespace genact {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::TaskNotFound: return "TaskNotFound";
    case ErrorCode::PlacementFailure: return "PlacementFailure";
    case ErrorCode::DemoFailure: return "DemoFailure";
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::ShapeError: return "ShapeError";
    case ErrorCode::UnknownScene: return "UnknownScene";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::PredicateError: return "PredicateError";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::IOError: return "IOError";
    case ErrorCode::DataQualityError: return "DataQualityError";
    case ErrorCode::CorruptEpisode: return "CorruptEpisode";
    case ErrorCode::NonFiniteLoss: return "NonFiniteLoss";
    case ErrorCode::CheckFailed: return "CheckFailed";
    case ErrorCode::NotReady: return "NotReady";
    case ErrorCode::UsageError: return "UsageError";
  }
  return "UnknownError";
}

}  // namespace genact
