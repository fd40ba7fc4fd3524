#ifndef IFRLAG_DOMAIN_HPP
#define IFRLAG_DOMAIN_HPP

#include <chrono>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ifrlag/error.hpp"

namespace ifrlag {

using Date = std::chrono::year_month_day;

/// Parses an ISO-8601 calendar date (YYYY-MM-DD). Throws Error(UnparseableRow).
Date parse_date(std::string_view text);
std::string format_date(Date date);
/// Signed number of days from `from` to `to`.
int days_between(Date from, Date to);
Date add_days(Date date, int days);

std::string_view library_version() noexcept;

/// Per-day counts starting at `origin`. Day j (1-based) falls on origin + j - 1.
class DailySeries {
public:
  /// Throws EmptySeries when `values` is empty and NonFiniteValue on NaN/inf.
  DailySeries(Date origin, std::vector<double> values);

  Date origin() const noexcept { return origin_; }
  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t index) const { return values_[index]; }
  /// 1-based accessor matching the day numbering used in reports.
  double day(int day_index) const { return values_.at(static_cast<std::size_t>(day_index - 1)); }
  Date date_of(int day_index) const { return add_days(origin_, day_index - 1); }
  double total() const noexcept;

  friend bool operator==(const DailySeries&, const DailySeries&) = default;

private:
  Date origin_;
  std::vector<double> values_;
};

struct Dataset {
  DailySeries cases;
  DailySeries deaths;
  DailySeries tests;
  std::int64_t population = 0;
  std::string label;

  std::size_t size() const noexcept { return cases.size(); }
  Date origin() const noexcept { return cases.origin(); }

  friend bool operator==(const Dataset&, const Dataset&) = default;
};

/// Cumulative infections A observed by a serology study through day `day_index`.
struct AntibodyAnchor {
  int day_index = 0;
  double infected_count = 0.0;
};

struct FitResult {
  int lag_a = 0;
  int lag_b = 0;
  double ifr = 0.0;
  double error = 0.0;

  double mean_lag() const noexcept { return 0.5 * (lag_a + lag_b); }
  friend bool operator==(const FitResult&, const FitResult&) = default;
};

/// Returns `raw` unchanged iff every Dataset invariant holds, otherwise throws
/// an Error naming the first violated invariant and its day index.
Dataset validate_dataset(Dataset raw);

/// Sum of squared elementwise differences. Throws LengthMismatch.
double error_metric(std::span<const double> x, std::span<const double> y);
double error_metric(const DailySeries& x, const DailySeries& y);

}  // namespace ifrlag

#endif  // IFRLAG_DOMAIN_HPP
