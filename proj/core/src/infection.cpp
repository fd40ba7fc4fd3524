#include "ifrlag/infection.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace ifrlag {

namespace {

void require_exponent(double m) {
  if (!(m > 1.0) || !std::isfinite(m)) {
    throw Error(ErrorCode::DomainError, "exponent m must be a finite value > 1, got " +
                                            std::to_string(m));
  }
}

double infections_on(double cases, double tests, double population, double m, int day) {
  if (cases == 0.0) return 0.0;
  if (tests <= 0.0) {
    throw Error(ErrorCode::DomainError, "day has cases but no tests", day);
  }
  return cases / std::pow(tests / population, 1.0 / m);
}

}  // namespace

DailySeries estimate_infections(const Dataset& dataset, double m) {
  require_exponent(m);
  const auto population = static_cast<double>(dataset.population);
  std::vector<double> out(dataset.size());
  for (std::size_t j = 0; j < out.size(); ++j) {
    out[j] = infections_on(dataset.cases[j], dataset.tests[j], population, m,
                           static_cast<int>(j + 1));
  }
  return DailySeries(dataset.origin(), std::move(out));
}

double anchor_sum(const Dataset& dataset, double m, int day_index) {
  require_exponent(m);
  if (day_index < 1 || static_cast<std::size_t>(day_index) > dataset.size()) {
    throw Error(ErrorCode::DomainError, "anchor day outside dataset", day_index);
  }
  const auto population = static_cast<double>(dataset.population);
  double sum = 0.0;
  for (int j = 0; j < day_index; ++j) {
    const auto idx = static_cast<std::size_t>(j);
    sum += infections_on(dataset.cases[idx], dataset.tests[idx], population, m, j + 1);
  }
  return sum;
}

AntibodyAnchor anchor_at_date(const Dataset& dataset, Date study_date, double infected_count) {
  const int day = days_between(dataset.origin(), study_date) + 1;
  if (day < 1) {
    throw Error(ErrorCode::DomainError,
                "antibody study date " + format_date(study_date) + " precedes dataset origin");
  }
  if (static_cast<std::size_t>(day) > dataset.size()) {
    throw Error(ErrorCode::DomainError,
                "antibody study date " + format_date(study_date) + " is after the last day");
  }
  if (!(infected_count > 0.0) || infected_count > static_cast<double>(dataset.population)) {
    throw Error(ErrorCode::DomainError, "anchor count must lie in (0, N]");
  }
  return AntibodyAnchor{day, infected_count};
}

AntibodyAnchor anchor_from_fraction(const Dataset& dataset, Date study_date, double fraction) {
  if (!(fraction > 0.0) || fraction > 1.0) {
    throw Error(ErrorCode::DomainError, "anchor fraction must lie in (0, 1]");
  }
  return anchor_at_date(dataset, study_date, fraction * static_cast<double>(dataset.population));
}

CalibrationResult calibrate_m(const Dataset& dataset, const AntibodyAnchor& anchor,
                              const CalibrationOptions& options) {
  if (!(options.m_lo > 1.0) || !(options.m_hi > options.m_lo)) {
    throw Error(ErrorCode::DomainError, "calibration bracket must satisfy 1 < m_lo < m_hi");
  }
  if (anchor.day_index < 1 || static_cast<std::size_t>(anchor.day_index) > dataset.size()) {
    throw Error(ErrorCode::DomainError, "anchor day outside dataset", anchor.day_index);
  }
  const double target = anchor.infected_count;
  if (!(target > 0.0)) {
    throw Error(ErrorCode::DomainError, "anchor count must be positive");
  }

  double cumulative_cases = 0.0;
  for (int j = 0; j < anchor.day_index; ++j) cumulative_cases += dataset.cases[static_cast<std::size_t>(j)];
  if (target <= cumulative_cases) {
    throw Error(ErrorCode::InfeasibleAnchorLow,
                "anchor " + std::to_string(target) + " does not exceed cumulative cases " +
                    std::to_string(cumulative_cases),
                anchor.day_index);
  }

  const double sum_lo = anchor_sum(dataset, options.m_lo, anchor.day_index);
  const double sum_hi = anchor_sum(dataset, options.m_hi, anchor.day_index);
  if (sum_lo == sum_hi) {
    throw Error(ErrorCode::DegenerateSeries,
                "anchor sum does not depend on m (full testing on every case day)",
                anchor.day_index);
  }
  if (target > sum_lo) {
    throw Error(ErrorCode::InfeasibleAnchorHigh,
                "anchor " + std::to_string(target) + " exceeds the largest attainable sum " +
                    std::to_string(sum_lo),
                anchor.day_index);
  }
  if (target < sum_hi) {
    throw Error(ErrorCode::InfeasibleAnchorLow,
                "anchor " + std::to_string(target) + " needs m above the search limit " +
                    std::to_string(options.m_hi),
                anchor.day_index);
  }

  // sum(lo) >= target >= sum(hi)
  double lo = options.m_lo;
  double hi = options.m_hi;
  double mid = 0.5 * (lo + hi);
  double sum_mid = anchor_sum(dataset, mid, anchor.day_index);
  int iterations = 1;
  while (iterations < options.max_iterations) {
    if (sum_mid > target) {
      lo = mid;
    } else if (sum_mid < target) {
      hi = mid;
    } else {
      break;
    }
    const double next = 0.5 * (lo + hi);
    if (next <= lo || next >= hi) break;
    mid = next;
    sum_mid = anchor_sum(dataset, mid, anchor.day_index);
    ++iterations;
  }

  if (std::abs(sum_mid - target) > options.tolerance * target) {
    throw Error(ErrorCode::DegenerateSeries,
                "bisection stalled before reaching tolerance (achieved " +
                    std::to_string(sum_mid) + ")",
                anchor.day_index);
  }
  return CalibrationResult{mid, sum_mid, anchor, iterations};
}

}  // namespace ifrlag
