#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gmra {

enum class ErrorCode {
  NonExpansive,
  SingularMatrix,
  DepthOverflow,
  OverlappingPieces,
  InvalidInterval,
  EpsilonTooLarge,
  ConsistencyViolated,
  IndexOutOfRange,
  SupportViolation,
  LowPassViolation,
  LipschitzSuspect,
  DimensionMismatch,
  CompletionFailed,
  NonConvergent,
  BoxTooSmall,
  InitialConditionViolated,
  ParseError,
  ConfigError,
  IoError,
  Unsupported,
};

std::string_view to_string(ErrorCode code);

// Every library failure is reported through this type; `code()` is stable
// and is what tests and the CLI dispatch on.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace gmra
