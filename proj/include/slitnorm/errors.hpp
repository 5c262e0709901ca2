#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace slitnorm {

/// Stable error identifiers. The names are part of the CLI and Python
/// surface, so existing entries must not be renamed.
enum class ErrorCode {
  kParseError,
  kEqualInputs,
  kIntegerHasNoParents,
  kNotNeighbors,
  kNotCoprime,
  kInvalidTorus,
  kZeroClass,
  kNonPrimitive,
  kNotUnimodular,
  kSlopeNotRational,
  kVisibilityIndeterminate,
  kPreconditionViolated,
  kCylinderTooShort,
  kNotAdjacent,
  kIllConditioned,
  kInsufficientData,
  kTargetUnreachable,
  kWindowTooSmall,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace slitnorm
