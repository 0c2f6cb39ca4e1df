#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace picent {

enum class ErrorCode {
  InvalidAction,
  TooLarge,
  NonPrime,
  IncompatibleGalois,
  DegenerateEigenspaces,
  NotSubgroup,
  NoProjection,
  NotCentral,
  NotNormal,
  BadFamily,
  InjectivityFailure,
  NotCoprime,
  NotIndecomposable,
  PreconditionFailed,
  HypothesisFailed,
  BadParameters,
  MissingTable,
  ParseError,
  ValidationError,
  CacheCorrupt,
};

std::string_view to_string(ErrorCode code);

// Single exception type for the toolkit; callers branch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace picent
