#include "gupqm/error.hpp"

namespace gupqm {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonPositiveConstant: return "NonPositiveConstant";
    case ErrorCode::BetaOutOfRange: return "BetaOutOfRange";
    case ErrorCode::NonPositiveInput: return "NonPositiveInput";
    case ErrorCode::InvalidQuantumNumber: return "InvalidQuantumNumber";
    case ErrorCode::RootBracketFailure: return "RootBracketFailure";
    case ErrorCode::NonPositiveEnergy: return "NonPositiveEnergy";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::GridTooSmall: return "GridTooSmall";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::DegenerateFit: return "DegenerateFit";
    case ErrorCode::OutsideFirstOrderDomain: return "OutsideFirstOrderDomain";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

}  // namespace gupqm
