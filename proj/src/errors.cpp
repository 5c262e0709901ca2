#include "slitnorm/errors.hpp"

namespace slitnorm {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kEqualInputs: return "EqualInputs";
    case ErrorCode::kIntegerHasNoParents: return "IntegerHasNoParents";
    case ErrorCode::kNotNeighbors: return "NotNeighbors";
    case ErrorCode::kNotCoprime: return "NotCoprime";
    case ErrorCode::kInvalidTorus: return "InvalidTorus";
    case ErrorCode::kZeroClass: return "ZeroClass";
    case ErrorCode::kNonPrimitive: return "NonPrimitive";
    case ErrorCode::kNotUnimodular: return "NotUnimodular";
    case ErrorCode::kSlopeNotRational: return "SlopeNotRational";
    case ErrorCode::kVisibilityIndeterminate: return "VisibilityIndeterminate";
    case ErrorCode::kPreconditionViolated: return "PreconditionViolated";
    case ErrorCode::kCylinderTooShort: return "CylinderTooShort";
    case ErrorCode::kNotAdjacent: return "NotAdjacent";
    case ErrorCode::kIllConditioned: return "IllConditioned";
    case ErrorCode::kInsufficientData: return "InsufficientData";
    case ErrorCode::kTargetUnreachable: return "TargetUnreachable";
    case ErrorCode::kWindowTooSmall: return "WindowTooSmall";
  }
  return "Unknown";
}

}  // namespace slitnorm
