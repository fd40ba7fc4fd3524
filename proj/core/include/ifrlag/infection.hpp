#ifndef IFRLAG_INFECTION_HPP
#define IFRLAG_INFECTION_HPP

#include "ifrlag/domain.hpp"

namespace ifrlag {

/// Testing-bias model: an infected person is tested with probability
/// P(T)^(1/m), where P(T) = tests/N is the daily testing rate. Cases are
/// therefore scaled up by (tests/N)^(-1/m) to estimate infections:
///
///   infections_j = cases_j / (tests_j / N)^(1/m)
///
/// Days with zero cases yield zero infections regardless of tests.
/// Throws DomainError for m <= 1, or when a day has cases but no tests.
DailySeries estimate_infections(const Dataset& dataset, double m);

/// Cumulative estimated infections over days 1..day_index (1-based).
/// Non-increasing in m; strictly decreasing whenever some case day has tests < N.
double anchor_sum(const Dataset& dataset, double m, int day_index);

/// Builds an anchor from a study date. Dates before the dataset origin or
/// after its last day are rejected with DomainError.
AntibodyAnchor anchor_at_date(const Dataset& dataset, Date study_date, double infected_count);
/// Same, with the serology result given as a population fraction.
AntibodyAnchor anchor_from_fraction(const Dataset& dataset, Date study_date, double fraction);

struct CalibrationOptions {
  double m_lo = 1.0 + 1e-9;
  double m_hi = 100.0;
  /// Relative tolerance on the anchor sum.
  double tolerance = 1e-6;
  int max_iterations = 200;
};

struct CalibrationResult {
  double m = 0.0;
  double achieved_sum = 0.0;
  AntibodyAnchor anchor;
  int iterations = 0;
};

/// Finds m in (m_lo, m_hi] with anchor_sum(m) ~= A by bisection.
///
/// Bisection continues past the tolerance until the bracket collapses to
/// floating resolution, so the returned m is the bracket midpoint at
/// convergence rather than the first probe inside tolerance.
///
/// Errors: InfeasibleAnchorLow when A <= cumulative cases (or when even
/// m_hi overshoots A), DegenerateSeries when the anchor sum does not depend
/// on m, InfeasibleAnchorHigh when A exceeds the sum at m_lo.
CalibrationResult calibrate_m(const Dataset& dataset, const AntibodyAnchor& anchor,
                              const CalibrationOptions& options = {});

}  // namespace ifrlag

#endif  // IFRLAG_INFECTION_HPP
