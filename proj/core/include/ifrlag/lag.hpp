#ifndef IFRLAG_LAG_HPP
#define IFRLAG_LAG_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace ifrlag {

class Rng;

enum class LagKind { uniform };

/// Integer-day lag law between a case and the resulting death.
///
/// Only the discrete uniform law on {a, ..., b} is constructible. `kind()`
/// exists so that other laws can be added without changing callers.
class LagDistribution {
public:
  /// Discrete Uniform(a, b). Throws DomainError unless 0 <= a <= b.
  static LagDistribution uniform(int a, int b);

  LagKind kind() const noexcept { return kind_; }
  int a() const noexcept { return a_; }
  int b() const noexcept { return b_; }
  /// Largest lag with positive probability.
  int max_lag() const noexcept { return b_; }
  double mean() const noexcept { return 0.5 * (a_ + b_); }

  /// P(L = lag); zero outside the support.
  double pmf(int lag) const noexcept;
  /// Draws one lag.
  int sample(Rng& rng) const;

  std::string describe() const;

  friend bool operator==(const LagDistribution&, const LagDistribution&) = default;

private:
  LagDistribution(LagKind kind, int a, int b) : kind_(kind), a_(a), b_(b) {}

  LagKind kind_;
  int a_;
  int b_;
};

struct ShiftedSeries {
  std::vector<double> values;
  bool elongated = false;
  std::size_t source_length = 0;

  double total() const noexcept;
};

/// Expected number of shifted units per day, i'_j = sum_{w<=j} i_w P(L = j - w),
/// truncated to the input length. Mass that lands past the last day is dropped.
ShiftedSeries shift_expectation(std::span<const double> infections, const LagDistribution& lag);

/// As shift_expectation but the output runs for max_lag extra days, so total
/// mass is conserved.
ShiftedSeries shift_expectation_elongated(std::span<const double> infections,
                                          const LagDistribution& lag);

}  // namespace ifrlag

#endif  // IFRLAG_LAG_HPP
