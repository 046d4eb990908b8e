#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gupqm {

enum class ErrorCode {
  NonPositiveConstant,
  BetaOutOfRange,
  NonPositiveInput,
  InvalidQuantumNumber,
  RootBracketFailure,
  NonPositiveEnergy,
  OutOfDomain,
  GridTooSmall,
  InvalidArgument,
  ConvergenceFailure,
  DegenerateFit,
  OutsideFirstOrderDomain,
  ConfigError,
};

std::string_view to_string(ErrorCode code);

// Single exception type for the library; callers dispatch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace gupqm
