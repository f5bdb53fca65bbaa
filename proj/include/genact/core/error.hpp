#pragma once

#include <stdexcept>
#include <string>

namespace genact {

enum class ErrorCode {
  TaskNotFound,
  PlacementFailure,
  DemoFailure,
  InvalidInput,
  ShapeError,
  UnknownScene,
  ConfigError,
  PredicateError,
  NotFound,
  IOError,
  DataQualityError,
  CorruptEpisode,
  NonFiniteLoss,
  CheckFailed,
  NotReady,
  UsageError,
};

const char* error_code_name(ErrorCode code);

// Domain error carrying a machine-checkable code plus a human message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace genact
