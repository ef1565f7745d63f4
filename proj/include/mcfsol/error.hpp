#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mcfsol {

enum class ErrorCode {
  InvalidParams,
  DegenerateHorizon,
  WrongKind,
  OutOfDomain,
  InsufficientSamples,
  WindowTooWide,
  NonPositiveWeight,
  ZeroNorm,
  InsufficientTail,
  NonIntegrableTail,
  ProfileSingularity,
  ParseError,
  ValidationError,
};

/// Exit-code class used by the command-line front end.
enum class ErrorClass { Usage = 1, Domain = 2, Numerical = 3 };

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::DegenerateHorizon: return "DegenerateHorizon";
    case ErrorCode::WrongKind: return "WrongKind";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::InsufficientSamples: return "InsufficientSamples";
    case ErrorCode::WindowTooWide: return "WindowTooWide";
    case ErrorCode::NonPositiveWeight: return "NonPositiveWeight";
    case ErrorCode::ZeroNorm: return "ZeroNorm";
    case ErrorCode::InsufficientTail: return "InsufficientTail";
    case ErrorCode::NonIntegrableTail: return "NonIntegrableTail";
    case ErrorCode::ProfileSingularity: return "ProfileSingularity";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
  }
  return "Unknown";
}

constexpr ErrorClass classify(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::ValidationError:
      return ErrorClass::Usage;
    case ErrorCode::InsufficientSamples:
    case ErrorCode::InsufficientTail:
    case ErrorCode::ProfileSingularity:
      return ErrorClass::Numerical;
    default:
      return ErrorClass::Domain;
  }
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

}  // namespace mcfsol
