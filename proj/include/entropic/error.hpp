#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace entropic {

enum class ErrorCode {
  ArityMismatch,
  ZeroInMultiplicativeGroup,
  NotPrime,
  InvalidModulus,
  EmptyProduct,
  EmptySupport,
  DuplicateElement,
  NonCanonical,
  InvalidDistribution,
  SpecMismatch,
  IndexOutOfRange,
  IndexOverlap,
  RingOpOnGroup,
  ZeroProbabilityEvent,
  EmptyGraph,
  InvalidGraph,
  ConstructionMismatch,
  SignatureMismatch,
  InvalidConfig,
  NonPrimeQ,
  InvalidPrime,
  SupportTooLarge,
  BudgetExceeded,
  ParseError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so the
/// CLI can map it onto an exit status and name it in diagnostics.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace entropic
