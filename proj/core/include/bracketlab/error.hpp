#ifndef BRACKETLAB_ERROR_HPP
#define BRACKETLAB_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace bracketlab {

enum class ErrorKind {
  kEmptySupport,
  kProbabilitySumOutOfTolerance,
  kInvalidProbability,
  kOutcomeOutOfBounds,
  kOutcomeNotInSupport,
  kSpaceMismatch,
  kSourceMismatch,
  kDomainViolation,
  kRangeViolation,
  kNonpositiveScale,
  kNonProductLottery,
  kDegenerateParameters,
  kInvalidModel,
  kInvalidTree,
  kPreconditionSamplerExhausted,
  kParseError,
};

std::string_view to_string(ErrorKind kind);

/// Single exception type for the library; `kind()` carries the contract-level
/// error name so callers can dispatch without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace bracketlab

#endif  // BRACKETLAB_ERROR_HPP
