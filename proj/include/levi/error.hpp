#pragma once

#include <stdexcept>
#include <string>

namespace levi {

enum class ErrorCode {
  dimension_mismatch,
  side_mismatch,
  universe_mismatch,
  invalid_pattern,
  invalid_spec,
  precondition,
  degenerate_pairing,
  invalid_levi,
  infinite_family,
  non_unique,
  not_levi,
  parse,
  semantic,
  internal,
};

inline const char* error_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::dimension_mismatch: return "DimensionMismatch";
    case ErrorCode::side_mismatch: return "SideMismatch";
    case ErrorCode::universe_mismatch: return "UniverseMismatch";
    case ErrorCode::invalid_pattern: return "InvalidPattern";
    case ErrorCode::invalid_spec: return "InvalidSpec";
    case ErrorCode::precondition: return "PreconditionViolation";
    case ErrorCode::degenerate_pairing: return "DegeneratePairing";
    case ErrorCode::invalid_levi: return "InvalidLevi";
    case ErrorCode::infinite_family: return "InfiniteFamily";
    case ErrorCode::non_unique: return "NonUnique";
    case ErrorCode::not_levi: return "NotLevi";
    case ErrorCode::parse: return "ParseError";
    case ErrorCode::semantic: return "SemanticError";
    case ErrorCode::internal: return "InternalError";
  }
  return "Error";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace levi
