#ifndef IFRLAG_FIT_HPP
#define IFRLAG_FIT_HPP

#include <span>
#include <vector>

#include "ifrlag/domain.hpp"
#include "ifrlag/lag.hpp"

namespace ifrlag {

struct FitConfig {
  /// Upper bound on b in the Uniform(a, b) grid.
  int max_lag = 50;
  /// When false an all-zero deaths series is rejected with ZeroDeathSeries
  /// instead of producing the degenerate (0, 0, 0) fit.
  bool allow_zero_ifr = true;
};

/// Least-squares scale r minimising sum_j (r * shifted_j - deaths_j)^2, i.e.
/// (shifted . deaths) / |shifted|^2. Unconstrained, so it may be negative or
/// exceed one. Throws ZeroShiftedSeries when |shifted|^2 == 0.
double closed_form_ifr(std::span<const double> shifted, std::span<const double> deaths);
double closed_form_ifr(const ShiftedSeries& shifted, std::span<const double> deaths);

/// Exhaustive search over every Uniform(a, b) with 0 <= a <= b <= max_lag.
///
/// Pairs are visited in lexicographic (a, b) order and only a strictly smaller
/// error replaces the incumbent, so the earliest pair wins ties. Pairs whose
/// truncated shift is identically zero are skipped.
///
/// Throws ZeroInfectionSeries when `infections` has no positive entry and
/// ZeroShiftedSeries when every pair is skipped.
FitResult best_fit(std::span<const double> infections, std::span<const double> deaths,
                   const FitConfig& config = {});

/// r * shift_expectation(infections, Uniform(a, b)) for a fit result.
std::vector<double> candidate_deaths(std::span<const double> infections, const FitResult& fit);

}  // namespace ifrlag

#endif  // IFRLAG_FIT_HPP
