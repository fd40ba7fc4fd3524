#ifndef IFRLAG_INTERVALS_HPP
#define IFRLAG_INTERVALS_HPP

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ifrlag/domain.hpp"

namespace ifrlag {

struct IntervalConfig {
  int width = 50;
  /// A trailing window shorter than this many days is dropped.
  int min_trailing = 10;
  /// Optional cap below width - 1. Lags are always kept below the width so
  /// that residual deaths never reach past the following window.
  std::optional<int> max_lag;

  int effective_max_lag() const;
};

enum class WarningKind {
  FirstWindowEdgeEffect,
  NegativeAdjustedDeaths,
  FlatDeathsWindow,
  ZeroDeathsWindow,
  NegativeIfr,
  TrailingPartialWindow,
  TrailingWindowDropped,
};

std::string_view to_string(WarningKind kind) noexcept;

struct Warning {
  WarningKind kind;
  std::string message;
};

struct WindowFit {
  int start_day = 0;  // 1-based, inclusive
  int end_day = 0;    // 1-based, inclusive
  FitResult fit;
  /// Residual deaths carried in from the previous window (subtracted here).
  std::vector<double> residual_in;
  /// Deaths after end_day attributed to this window's infections; length b*.
  std::vector<double> residual_out;
  /// Raw deaths minus residual_in; what best_fit was run against.
  std::vector<double> adjusted_deaths;
  /// r* times the truncated shift of this window's infections.
  std::vector<double> fitted_current_deaths;
  std::vector<Warning> warnings;

  int length() const noexcept { return end_day - start_day + 1; }
};

struct IntervalReport {
  std::vector<WindowFit> windows;
  /// Report-level warnings (e.g. a dropped trailing window).
  std::vector<Warning> warnings;
  /// Per-day modelled deaths over the covered days: fitted current deaths
  /// plus incoming residuals.
  std::vector<double> candidate_deaths;
};

/// r* times the part of the elongated shift that lies after the window end.
/// Its length is exactly b*.
std::vector<double> compute_residuals(std::span<const double> window_infections,
                                      const FitResult& fit);

/// Fits consecutive windows of `config.width` days left to right, removing
/// each window's residual deaths from the next window before fitting it.
///
/// Throws LengthMismatch, ZeroInfectionWindow (naming the window), and
/// rethrows fit errors prefixed with the window's day range.
IntervalReport fit_intervals(std::span<const double> infections, std::span<const double> deaths,
                             const IntervalConfig& config = {});

}  // namespace ifrlag

#endif  // IFRLAG_INTERVALS_HPP
