#include "monoreg/error.hpp"

namespace monoreg {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotAntichain: return "NotAntichain";
    case ErrorCode::NotCover: return "NotCover";
    case ErrorCode::EmptyClauseSet: return "EmptyClauseSet";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::ArityTooLarge: return "ArityTooLarge";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::ThresholdOutOfRange: return "ThresholdOutOfRange";
    case ErrorCode::NoActivators: return "NoActivators";
    case ErrorCode::NotAParent: return "NotAParent";
    case ErrorCode::DedekindUnknown: return "DedekindUnknown";
    case ErrorCode::StateSpaceTooLarge: return "StateSpaceTooLarge";
    case ErrorCode::NotAutoregulated: return "NotAutoregulated";
    case ErrorCode::SingleRegulator: return "SingleRegulator";
    case ErrorCode::NotAChain: return "NotAChain";
    case ErrorCode::InvalidProbability: return "InvalidProbability";
    case ErrorCode::MissingMarker: return "MissingMarker";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::DualRegulation: return "DualRegulation";
    case ErrorCode::NotDNF: return "NotDNFAfterNormalization";
    case ErrorCode::UnknownVariable: return "UnknownVariable";
    case ErrorCode::DuplicateComponent: return "DuplicateComponent";
    case ErrorCode::NonEssentialRegulator: return "NonEssentialRegulator";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

bool is_parse_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::SyntaxError:
    case ErrorCode::DualRegulation:
    case ErrorCode::NotDNF:
    case ErrorCode::UnknownVariable:
    case ErrorCode::DuplicateComponent:
      return true;
    default:
      return false;
  }
}

}  // namespace monoreg
