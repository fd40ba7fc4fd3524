#include "ifrlag/intervals.hpp"

#include <algorithm>
#include <string>

#include "ifrlag/fit.hpp"
#include "ifrlag/lag.hpp"

namespace ifrlag {

int IntervalConfig::effective_max_lag() const {
  if (width < 2) throw Error(ErrorCode::DomainError, "interval width must be at least 2");
  if (max_lag && *max_lag < 0) throw Error(ErrorCode::DomainError, "max_lag must be >= 0");
  return std::min(max_lag.value_or(width - 1), width - 1);
}

std::string_view to_string(WarningKind kind) noexcept {
  switch (kind) {
    case WarningKind::FirstWindowEdgeEffect: return "FirstWindowEdgeEffect";
    case WarningKind::NegativeAdjustedDeaths: return "NegativeAdjustedDeaths";
    case WarningKind::FlatDeathsWindow: return "FlatDeathsWindow";
    case WarningKind::ZeroDeathsWindow: return "ZeroDeathsWindow";
    case WarningKind::NegativeIfr: return "NegativeIfr";
    case WarningKind::TrailingPartialWindow: return "TrailingPartialWindow";
    case WarningKind::TrailingWindowDropped: return "TrailingWindowDropped";
  }
  return "Unknown";
}

std::vector<double> compute_residuals(std::span<const double> window_infections,
                                      const FitResult& fit) {
  const ShiftedSeries ext = shift_expectation_elongated(
      window_infections, LagDistribution::uniform(fit.lag_a, fit.lag_b));
  std::vector<double> tail(ext.values.begin() + static_cast<std::ptrdiff_t>(window_infections.size()),
                           ext.values.end());
  for (double& v : tail) v *= fit.ifr;
  return tail;
}

namespace {

std::string window_name(int start_day, int end_day) {
  return "window [" + std::to_string(start_day) + ", " + std::to_string(end_day) + "]";
}

void add_death_shape_warnings(std::span<const double> deaths, std::vector<Warning>& warnings) {
  if (std::all_of(deaths.begin(), deaths.end(), [](double v) { return v == 0.0; })) {
    warnings.push_back({WarningKind::ZeroDeathsWindow, "no deaths to fit; IFR is zero"});
    return;
  }
  double mean = 0.0;
  for (double v : deaths) mean += v;
  mean /= static_cast<double>(deaths.size());
  double var = 0.0;
  for (double v : deaths) var += (v - mean) * (v - mean);
  var /= static_cast<double>(deaths.size());
  if (var < 1e-3 * mean * mean) {
    warnings.push_back({WarningKind::FlatDeathsWindow,
                        "deaths are nearly flat; the fitted lag is weakly identified"});
  }
}

}  // namespace

IntervalReport fit_intervals(std::span<const double> infections, std::span<const double> deaths,
                             const IntervalConfig& config) {
  if (infections.size() != deaths.size()) {
    throw Error(ErrorCode::LengthMismatch, "infections and deaths must have equal length");
  }
  if (config.min_trailing < 1) {
    throw Error(ErrorCode::DomainError, "min_trailing must be at least 1");
  }
  const int max_lag = config.effective_max_lag();
  const auto k = static_cast<int>(infections.size());
  const int w = config.width;

  IntervalReport report;
  std::vector<double> residual_in;

  for (int start = 0; start < k; start += w) {
    const int len = std::min(w, k - start);
    const int start_day = start + 1;
    const int end_day = start + len;
    std::vector<Warning> warnings;

    if (len < w) {
      if (len < config.min_trailing) {
        report.warnings.push_back(
            {WarningKind::TrailingWindowDropped,
             window_name(start_day, end_day) + " has " + std::to_string(len) +
                 " days, fewer than min_trailing=" + std::to_string(config.min_trailing)});
        break;
      }
      warnings.push_back({WarningKind::TrailingPartialWindow,
                          "trailing window of " + std::to_string(len) + " days"});
    }

    const auto window_inf = infections.subspan(static_cast<std::size_t>(start),
                                               static_cast<std::size_t>(len));
    if (std::none_of(window_inf.begin(), window_inf.end(), [](double v) { return v > 0; })) {
      throw Error(ErrorCode::ZeroInfectionWindow,
                  window_name(start_day, end_day) + " has no positive infections", start_day);
    }

    std::vector<double> adjusted(deaths.begin() + start, deaths.begin() + start + len);
    const std::size_t overlap = std::min(adjusted.size(), residual_in.size());
    for (std::size_t x = 0; x < overlap; ++x) adjusted[x] -= residual_in[x];
    if (std::any_of(adjusted.begin(), adjusted.end(), [](double v) { return v < 0; })) {
      warnings.push_back({WarningKind::NegativeAdjustedDeaths,
                          "incoming residual deaths exceed reported deaths on some days"});
    }
    if (start == 0) {
      warnings.push_back({WarningKind::FirstWindowEdgeEffect,
                          "all deaths in the first window are attributed to its own infections"});
    }
    add_death_shape_warnings(adjusted, warnings);

    FitResult fit;
    try {
      fit = best_fit(window_inf, adjusted, FitConfig{max_lag, true});
    } catch (const Error& e) {
      throw Error(e.code(), window_name(start_day, end_day) + ": " + e.what(), start_day);
    }
    if (fit.ifr < 0) {
      warnings.push_back({WarningKind::NegativeIfr, "least-squares IFR is negative"});
    }

    WindowFit window;
    window.start_day = start_day;
    window.end_day = end_day;
    window.fit = fit;
    window.residual_out = compute_residuals(window_inf, fit);
    window.fitted_current_deaths = candidate_deaths(window_inf, fit);
    for (int x = 0; x < len; ++x) {
      const auto ux = static_cast<std::size_t>(x);
      report.candidate_deaths.push_back(window.fitted_current_deaths[ux] +
                                        (ux < residual_in.size() ? residual_in[ux] : 0.0));
    }
    window.residual_in = std::move(residual_in);
    window.adjusted_deaths = std::move(adjusted);
    window.warnings = std::move(warnings);
    residual_in = window.residual_out;
    report.windows.push_back(std::move(window));
  }
  return report;
}

}  // namespace ifrlag
