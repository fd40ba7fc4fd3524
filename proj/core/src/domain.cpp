#include "ifrlag/domain.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <numeric>

#ifndef IFRLAG_VERSION_STRING
#define IFRLAG_VERSION_STRING "0.0.0"
#endif

namespace ifrlag {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::NegativeValue: return "NegativeValue";
    case ErrorCode::CasesExceedTests: return "CasesExceedTests";
    case ErrorCode::NonFiniteValue: return "NonFiniteValue";
    case ErrorCode::EmptySeries: return "EmptySeries";
    case ErrorCode::MissingColumn: return "MissingColumn";
    case ErrorCode::UnparseableRow: return "UnparseableRow";
    case ErrorCode::GapUnrepairable: return "GapUnrepairable";
    case ErrorCode::PolicyViolation: return "PolicyViolation";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::Io: return "Io";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::InfeasibleAnchorLow: return "InfeasibleAnchorLow";
    case ErrorCode::InfeasibleAnchorHigh: return "InfeasibleAnchorHigh";
    case ErrorCode::DegenerateSeries: return "DegenerateSeries";
    case ErrorCode::ZeroShiftedSeries: return "ZeroShiftedSeries";
    case ErrorCode::ZeroInfectionSeries: return "ZeroInfectionSeries";
    case ErrorCode::ZeroInfectionWindow: return "ZeroInfectionWindow";
    case ErrorCode::ZeroDeathSeries: return "ZeroDeathSeries";
    case ErrorCode::InvalidScenario: return "InvalidScenario";
  }
  return "Unknown";
}

namespace {

std::string decorate(ErrorCode code, const std::string& message,
                     std::optional<int> day, std::optional<int> line) {
  std::string out{to_string(code)};
  if (day) out += " at day " + std::to_string(*day);
  if (line) out += " at line " + std::to_string(*line);
  out += ": ";
  out += message;
  return out;
}

}  // namespace

Error::Error(ErrorCode code, const std::string& message, std::optional<int> day,
             std::optional<int> line)
    : std::runtime_error(decorate(code, message, day, line)),
      code_(code),
      day_(day),
      line_(line) {}

std::string_view library_version() noexcept { return IFRLAG_VERSION_STRING; }

Date parse_date(std::string_view text) {
  auto fail = [&] {
    return Error(ErrorCode::UnparseableRow,
                 "expected ISO-8601 date YYYY-MM-DD, got '" + std::string(text) + "'");
  };
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') throw fail();
  int y = 0;
  unsigned m = 0;
  unsigned d = 0;
  auto parse = [&](std::size_t pos, std::size_t len, auto& out) {
    const char* first = text.data() + pos;
    auto [ptr, ec] = std::from_chars(first, first + len, out);
    if (ec != std::errc{} || ptr != first + len) throw fail();
  };
  parse(0, 4, y);
  parse(5, 2, m);
  parse(8, 2, d);
  Date date{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
  if (!date.ok()) throw fail();
  return date;
}

std::string format_date(Date date) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(date.year()),
                static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day()));
  return buf;
}

int days_between(Date from, Date to) {
  using std::chrono::sys_days;
  return static_cast<int>((sys_days{to} - sys_days{from}).count());
}

Date add_days(Date date, int days) {
  return Date{std::chrono::sys_days{date} + std::chrono::days{days}};
}

DailySeries::DailySeries(Date origin, std::vector<double> values)
    : origin_(origin), values_(std::move(values)) {
  if (values_.empty()) throw Error(ErrorCode::EmptySeries, "series must hold at least one day");
  for (std::size_t j = 0; j < values_.size(); ++j) {
    if (!std::isfinite(values_[j])) {
      throw Error(ErrorCode::NonFiniteValue, "series values must be finite",
                  static_cast<int>(j + 1));
    }
  }
}

double DailySeries::total() const noexcept {
  return std::accumulate(values_.begin(), values_.end(), 0.0);
}

Dataset validate_dataset(Dataset raw) {
  const std::size_t k = raw.cases.size();
  for (const DailySeries* s : {&raw.deaths, &raw.tests}) {
    if (s->size() != k) {
      throw Error(ErrorCode::LengthMismatch,
                  "cases, deaths and tests must have equal length (cases has " +
                      std::to_string(k) + " days, other series " + std::to_string(s->size()) + ")",
                  static_cast<int>(std::min(k, s->size()) + 1));
    }
    if (s->origin() != raw.cases.origin()) {
      throw Error(ErrorCode::LengthMismatch, "series must share the same origin day");
    }
  }
  if (raw.population <= 0) {
    throw Error(ErrorCode::DomainError, "population must be positive");
  }
  const auto population = static_cast<double>(raw.population);
  for (std::size_t j = 0; j < k; ++j) {
    const int day = static_cast<int>(j + 1);
    const double c = raw.cases[j];
    const double d = raw.deaths[j];
    const double t = raw.tests[j];
    if (c < 0) throw Error(ErrorCode::NegativeValue, "negative cases", day);
    if (d < 0) throw Error(ErrorCode::NegativeValue, "negative deaths", day);
    if (t < 0) throw Error(ErrorCode::NegativeValue, "negative tests", day);
    if (t > population) throw Error(ErrorCode::DomainError, "tests exceed population", day);
    if (c > t) {
      throw Error(ErrorCode::CasesExceedTests,
                  "cases (" + std::to_string(c) + ") exceed tests (" + std::to_string(t) + ")", day);
    }
  }
  return raw;
}

double error_metric(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw Error(ErrorCode::LengthMismatch, "error metric needs equal-length series");
  }
  double sum = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double diff = x[j] - y[j];
    sum += diff * diff;
  }
  return sum;
}

double error_metric(const DailySeries& x, const DailySeries& y) {
  return error_metric(x.values(), y.values());
}

}  // namespace ifrlag
