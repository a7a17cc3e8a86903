#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hlp {

enum class ErrorCode {
  NotHermitian,
  NotPSD,
  SingularNegativePower,
  BadExponent,
  ProfileMismatch,
  NotFaithful,
  NoConvergence,
  ExponentMismatch,
  ExponentOrder,
  NotModuleMap,
  RatioMismatch,
  DominationFails,
  NotCommuting,
  NotSummable,
  TooLarge,
  EmptySupport,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Single exception type for the library; the code identifies the failed
/// precondition so callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace hlp
