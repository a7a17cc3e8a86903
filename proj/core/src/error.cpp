#include "hlp/error.hpp"

namespace hlp {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::SingularNegativePower: return "SingularNegativePower";
    case ErrorCode::BadExponent: return "BadExponent";
    case ErrorCode::ProfileMismatch: return "ProfileMismatch";
    case ErrorCode::NotFaithful: return "NotFaithful";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::ExponentMismatch: return "ExponentMismatch";
    case ErrorCode::ExponentOrder: return "ExponentOrder";
    case ErrorCode::NotModuleMap: return "NotModuleMap";
    case ErrorCode::RatioMismatch: return "RatioMismatch";
    case ErrorCode::DominationFails: return "DominationFails";
    case ErrorCode::NotCommuting: return "NotCommuting";
    case ErrorCode::NotSummable: return "NotSummable";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::EmptySupport: return "EmptySupport";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace hlp
