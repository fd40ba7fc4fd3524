#ifndef IFRLAG_ERROR_HPP
#define IFRLAG_ERROR_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ifrlag {

enum class ErrorCode {
  // dataset validation
  LengthMismatch,
  NegativeValue,
  CasesExceedTests,
  NonFiniteValue,
  EmptySeries,
  // ingest
  MissingColumn,
  UnparseableRow,
  GapUnrepairable,
  PolicyViolation,
  InvalidConfig,
  Io,
  // infection
  DomainError,
  InfeasibleAnchorLow,
  InfeasibleAnchorHigh,
  DegenerateSeries,
  // fit / intervals
  ZeroShiftedSeries,
  ZeroInfectionSeries,
  ZeroInfectionWindow,
  ZeroDeathSeries,
  // synth
  InvalidScenario,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Error raised by every ifrlag operation. Carries a machine-readable code
/// plus, where meaningful, the 1-based day index or 1-based CSV line number
/// at which the problem was detected.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& message,
        std::optional<int> day = std::nullopt,
        std::optional<int> line = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  std::optional<int> day() const noexcept { return day_; }
  std::optional<int> line() const noexcept { return line_; }

private:
  ErrorCode code_;
  std::optional<int> day_;
  std::optional<int> line_;
};

}  // namespace ifrlag

#endif  // IFRLAG_ERROR_HPP
