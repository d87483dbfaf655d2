#include "abring/error.hpp"

namespace abring {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::InvalidBeta: return "InvalidBeta";
    case ErrorCode::DegenerateField: return "DegenerateField";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::NonPositivePartition: return "NonPositivePartition";
    case ErrorCode::UnsupportedOrder: return "UnsupportedOrder";
    case ErrorCode::StepTooLarge: return "StepTooLarge";
    case ErrorCode::MethodNotApplicable: return "MethodNotApplicable";
    case ErrorCode::Config: return "Config";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace abring
