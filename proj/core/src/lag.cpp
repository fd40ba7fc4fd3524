#include "ifrlag/lag.hpp"

#include <algorithm>
#include <numeric>

#include "ifrlag/error.hpp"
#include "ifrlag/random.hpp"

namespace ifrlag {

LagDistribution LagDistribution::uniform(int a, int b) {
  if (a < 0 || b < a) {
    throw Error(ErrorCode::DomainError, "Uniform(a, b) lag requires 0 <= a <= b, got (" +
                                            std::to_string(a) + ", " + std::to_string(b) + ")");
  }
  return LagDistribution(LagKind::uniform, a, b);
}

double LagDistribution::pmf(int lag) const noexcept {
  switch (kind_) {
    case LagKind::uniform:
      return (lag < a_ || lag > b_) ? 0.0 : 1.0 / static_cast<double>(b_ - a_ + 1);
  }
  return 0.0;
}

int LagDistribution::sample(Rng& rng) const {
  switch (kind_) {
    case LagKind::uniform:
      return static_cast<int>(rng.uniform_int(a_, b_));
  }
  return a_;
}

std::string LagDistribution::describe() const {
  switch (kind_) {
    case LagKind::uniform:
      return "Uniform(" + std::to_string(a_) + "," + std::to_string(b_) + ")";
  }
  return "?";
}

double ShiftedSeries::total() const noexcept {
  return std::accumulate(values.begin(), values.end(), 0.0);
}

namespace {

// Fills the first out.size() entries of the expected shift. Truncated and
// elongated variants share this so their common prefix is bit-identical.
void expected_shift(std::span<const double> in, const LagDistribution& lag,
                    std::span<double> out) {
  const auto n = static_cast<std::ptrdiff_t>(in.size());
  const std::ptrdiff_t lo = lag.a();
  const std::ptrdiff_t hi = lag.b();
  switch (lag.kind()) {
    case LagKind::uniform: {
      const double p = lag.pmf(lag.a());
      for (std::ptrdiff_t j = 0; j < static_cast<std::ptrdiff_t>(out.size()); ++j) {
        // sources w with lo <= j - w <= hi and 0 <= w < n
        const std::ptrdiff_t first = std::max<std::ptrdiff_t>(0, j - hi);
        const std::ptrdiff_t last = std::min<std::ptrdiff_t>(n - 1, j - lo);
        double sum = 0.0;
        for (std::ptrdiff_t w = first; w <= last; ++w) sum += in[static_cast<std::size_t>(w)];
        out[static_cast<std::size_t>(j)] = sum * p;
      }
      break;
    }
  }
}

}  // namespace

ShiftedSeries shift_expectation(std::span<const double> infections, const LagDistribution& lag) {
  ShiftedSeries out;
  out.values.assign(infections.size(), 0.0);
  out.source_length = infections.size();
  expected_shift(infections, lag, out.values);
  return out;
}

ShiftedSeries shift_expectation_elongated(std::span<const double> infections,
                                          const LagDistribution& lag) {
  ShiftedSeries out;
  out.values.assign(infections.size() + static_cast<std::size_t>(lag.max_lag()), 0.0);
  out.source_length = infections.size();
  out.elongated = true;
  expected_shift(infections, lag, out.values);
  return out;
}

}  // namespace ifrlag
