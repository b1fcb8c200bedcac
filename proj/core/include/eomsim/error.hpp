#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace eomsim {

enum class ErrorCode {
  kNonPositive,
  kNonFinite,
  kNegativeVoltageSquared,
  kNonPositiveVoltage,
  kDegenerateDenominator,
  kSingularMatrix,
  kStepRejected,
  kMaxStepsExceeded,
  kUndersampledWaveform,
  kInvalidWaveform,
  kInvalidTarget,
  kBelowReachable,
  kAboveReachable,
  kNoWindow,
  kInvalidGrid,
  kInvalidConfig,
  kInvalidSolverConfig,
  kIo,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// A requested absorption outside the electrically reachable band
// [a_min, a_max). `index` is set when the value came from a sampled target.
class OutOfBandError : public Error {
 public:
  OutOfBandError(ErrorCode code, double requested, double a_min, double a_max,
                 std::optional<std::size_t> index = std::nullopt);

  double requested() const noexcept { return requested_; }
  double a_min() const noexcept { return a_min_; }
  double a_max() const noexcept { return a_max_; }
  std::optional<std::size_t> index() const noexcept { return index_; }

 private:
  double requested_;
  double a_min_;
  double a_max_;
  std::optional<std::size_t> index_;
};

enum class IssueKind { kNonPositive, kNonFinite, kWeakField, kGammaOrder };

struct Issue {
  IssueKind kind;
  std::string field;
  std::string message;

  bool fatal() const noexcept {
    return kind == IssueKind::kNonPositive || kind == IssueKind::kNonFinite;
  }
  bool operator==(const Issue&) const = default;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Issue> issues);

  const std::vector<Issue>& issues() const noexcept { return issues_; }

 private:
  std::vector<Issue> issues_;
};

}  // namespace eomsim
