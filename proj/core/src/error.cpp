#include "eomsim/error.hpp"

#include <sstream>

namespace eomsim {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNonPositive: return "NonPositive";
    case ErrorCode::kNonFinite: return "NonFinite";
    case ErrorCode::kNegativeVoltageSquared: return "NegativeVoltageSquared";
    case ErrorCode::kNonPositiveVoltage: return "NonPositiveVoltage";
    case ErrorCode::kDegenerateDenominator: return "DegenerateDenominator";
    case ErrorCode::kSingularMatrix: return "SingularM";
    case ErrorCode::kStepRejected: return "StepRejected";
    case ErrorCode::kMaxStepsExceeded: return "MaxStepsExceeded";
    case ErrorCode::kUndersampledWaveform: return "UndersampledWaveform";
    case ErrorCode::kInvalidWaveform: return "InvalidWaveform";
    case ErrorCode::kInvalidTarget: return "InvalidTarget";
    case ErrorCode::kBelowReachable: return "BelowReachable";
    case ErrorCode::kAboveReachable: return "AboveReachable";
    case ErrorCode::kNoWindow: return "NoWindow";
    case ErrorCode::kInvalidGrid: return "InvalidGrid";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kInvalidSolverConfig: return "InvalidSolverConfig";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

namespace {

std::string band_message(ErrorCode code, double requested, double a_min,
                         double a_max, std::optional<std::size_t> index) {
  std::ostringstream os;
  os.precision(17);
  os << to_string(code) << ": absorption " << requested;
  if (index) os << " at sample " << *index;
  os << " outside reachable band [" << a_min << ", " << a_max << ")";
  return os.str();
}

std::string issues_message(const std::vector<Issue>& issues) {
  std::ostringstream os;
  os << "invalid device parameters:";
  for (const auto& issue : issues) {
    if (issue.fatal()) os << "\n  " << issue.field << ": " << issue.message;
  }
  return os.str();
}

}  // namespace

OutOfBandError::OutOfBandError(ErrorCode code, double requested, double a_min,
                               double a_max, std::optional<std::size_t> index)
    : Error(code, band_message(code, requested, a_min, a_max, index)),
      requested_(requested),
      a_min_(a_min),
      a_max_(a_max),
      index_(index) {}

ValidationError::ValidationError(std::vector<Issue> issues)
    : Error(ErrorCode::kNonPositive, issues_message(issues)),
      issues_(std::move(issues)) {}

}  // namespace eomsim
