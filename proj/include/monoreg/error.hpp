#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace monoreg {

enum class ErrorCode {
  // function-core
  NotAntichain,
  NotCover,
  EmptyClauseSet,
  ArityMismatch,
  ArityTooLarge,
  IndexOutOfRange,
  ThresholdOutOfRange,
  NoActivators,
  // neighborhood
  NotAParent,
  DedekindUnknown,
  // dynamics
  StateSpaceTooLarge,
  NotAutoregulated,
  SingleRegulator,
  NotAChain,
  // pbn
  InvalidProbability,
  MissingMarker,
  // model-io
  SyntaxError,
  DualRegulation,
  NotDNF,
  UnknownVariable,
  DuplicateComponent,
  NonEssentialRegulator,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code);

// Parse errors come from malformed text; everything else is a validation or
// limit violation on otherwise well-formed input.
bool is_parse_error(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), detail_(what) {}

  ErrorCode code() const noexcept { return code_; }
  /// Message without the code prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace monoreg
