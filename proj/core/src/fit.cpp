#include "ifrlag/fit.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace ifrlag {

double closed_form_ifr(std::span<const double> shifted, std::span<const double> deaths) {
  if (shifted.size() != deaths.size()) {
    throw Error(ErrorCode::LengthMismatch, "shifted series and deaths must have equal length");
  }
  double dot = 0.0;
  double norm2 = 0.0;
  for (std::size_t j = 0; j < shifted.size(); ++j) {
    dot += shifted[j] * deaths[j];
    norm2 += shifted[j] * shifted[j];
  }
  if (norm2 == 0.0) {
    throw Error(ErrorCode::ZeroShiftedSeries, "shifted infections are identically zero");
  }
  return dot / norm2;
}

double closed_form_ifr(const ShiftedSeries& shifted, std::span<const double> deaths) {
  return closed_form_ifr(std::span<const double>(shifted.values), deaths);
}

FitResult best_fit(std::span<const double> infections, std::span<const double> deaths,
                   const FitConfig& config) {
  if (infections.size() != deaths.size()) {
    throw Error(ErrorCode::LengthMismatch, "infections and deaths must have equal length");
  }
  if (infections.empty()) {
    throw Error(ErrorCode::EmptySeries, "best fit needs at least one day");
  }
  if (config.max_lag < 0) {
    throw Error(ErrorCode::DomainError, "max_lag must be non-negative");
  }
  if (std::none_of(infections.begin(), infections.end(), [](double v) { return v > 0; })) {
    throw Error(ErrorCode::ZeroInfectionSeries, "infections have no positive entry");
  }
  if (!config.allow_zero_ifr &&
      std::all_of(deaths.begin(), deaths.end(), [](double v) { return v == 0.0; })) {
    throw Error(ErrorCode::ZeroDeathSeries, "deaths are identically zero");
  }

  FitResult best;
  double best_error = std::numeric_limits<double>::infinity();
  bool found = false;
  std::vector<double> scaled(infections.size());

  for (int a = 0; a <= config.max_lag; ++a) {
    for (int b = a; b <= config.max_lag; ++b) {
      const ShiftedSeries shifted = shift_expectation(infections, LagDistribution::uniform(a, b));
      double norm2 = 0.0;
      for (double v : shifted.values) norm2 += v * v;
      if (norm2 == 0.0) continue;

      const double r = closed_form_ifr(shifted, deaths);
      for (std::size_t j = 0; j < scaled.size(); ++j) scaled[j] = r * shifted.values[j];
      const double err = error_metric(scaled, deaths);
      if (err < best_error) {
        best_error = err;
        best = FitResult{a, b, r, err};
        found = true;
      }
    }
  }
  if (!found) {
    throw Error(ErrorCode::ZeroShiftedSeries,
                "every lag in the grid shifts all infections past the series end");
  }
  return best;
}

std::vector<double> candidate_deaths(std::span<const double> infections, const FitResult& fit) {
  ShiftedSeries shifted =
      shift_expectation(infections, LagDistribution::uniform(fit.lag_a, fit.lag_b));
  for (double& v : shifted.values) v *= fit.ifr;
  return std::move(shifted.values);
}

}  // namespace ifrlag
