#ifndef ORDBUBBLE_ERROR_HPP
#define ORDBUBBLE_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ordbubble {

enum class ErrorKind {
  UnknownLabel,
  CarrierMismatch,
  EmptyCarrier,
  NotAnEquivalence,
  NotSaturated,
  NotAnIndifference,
  NotConstantOnClasses,
  NotIncreasing,
  NotAPreorder,
  PairInvalid,
  NotNegativelyTransitive,
  InvalidSystem,
  TooLarge,
  NotAPartialOrder,
  AlreadyComparable,
  NotOpen,
  ParseError,
  ValidationError,
  InvariantViolation,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::UnknownLabel: return "UnknownLabel";
    case ErrorKind::CarrierMismatch: return "CarrierMismatch";
    case ErrorKind::EmptyCarrier: return "EmptyCarrier";
    case ErrorKind::NotAnEquivalence: return "NotAnEquivalence";
    case ErrorKind::NotSaturated: return "NotSaturated";
    case ErrorKind::NotAnIndifference: return "NotAnIndifference";
    case ErrorKind::NotConstantOnClasses: return "NotConstantOnClasses";
    case ErrorKind::NotIncreasing: return "NotIncreasing";
    case ErrorKind::NotAPreorder: return "NotAPreorder";
    case ErrorKind::PairInvalid: return "PairInvalid";
    case ErrorKind::NotNegativelyTransitive: return "NotNegativelyTransitive";
    case ErrorKind::InvalidSystem: return "InvalidSystem";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::NotAPartialOrder: return "NotAPartialOrder";
    case ErrorKind::AlreadyComparable: return "AlreadyComparable";
    case ErrorKind::NotOpen: return "NotOpen";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
  }
  return "Unknown";
}

/// Every failure in the library surfaces as an Error. The witness, when
/// present, is the tuple of element labels that violates the failed
/// condition (lexicographically least under carrier order).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message,
        std::vector<std::string> witness = {})
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind),
        witness_(std::move(witness)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::vector<std::string>& witness() const noexcept { return witness_; }

 private:
  ErrorKind kind_;
  std::vector<std::string> witness_;
};

}  // namespace ordbubble

#endif  // ORDBUBBLE_ERROR_HPP
