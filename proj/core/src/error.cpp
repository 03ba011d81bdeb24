#include "bracketlab/error.hpp"

namespace bracketlab {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kEmptySupport: return "EmptySupport";
    case ErrorKind::kProbabilitySumOutOfTolerance: return "ProbabilitySumOutOfTolerance";
    case ErrorKind::kInvalidProbability: return "InvalidProbability";
    case ErrorKind::kOutcomeOutOfBounds: return "OutcomeOutOfBounds";
    case ErrorKind::kOutcomeNotInSupport: return "OutcomeNotInSupport";
    case ErrorKind::kSpaceMismatch: return "SpaceMismatch";
    case ErrorKind::kSourceMismatch: return "SourceMismatch";
    case ErrorKind::kDomainViolation: return "DomainViolation";
    case ErrorKind::kRangeViolation: return "RangeViolation";
    case ErrorKind::kNonpositiveScale: return "NonpositiveScale";
    case ErrorKind::kNonProductLottery: return "NonProductLottery";
    case ErrorKind::kDegenerateParameters: return "DegenerateParameters";
    case ErrorKind::kInvalidModel: return "InvalidModel";
    case ErrorKind::kInvalidTree: return "InvalidTree";
    case ErrorKind::kPreconditionSamplerExhausted: return "PreconditionSamplerExhausted";
    case ErrorKind::kParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

}  // namespace bracketlab
