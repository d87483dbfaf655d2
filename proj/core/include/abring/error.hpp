#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace abring {

enum class ErrorCode {
  InvalidParams,
  InvalidBeta,
  DegenerateField,
  NonConvergence,
  NonPositivePartition,
  UnsupportedOrder,
  StepTooLarge,
  MethodNotApplicable,
  Config,
  Io,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library. The code is stable; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace abring
