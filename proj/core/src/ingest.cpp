#include "ifrlag/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <iterator>
#include <map>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace ifrlag {

TestGapFill parse_test_gap_fill(std::string_view text) {
  if (text == "interpolate") return TestGapFill::interpolate;
  if (text == "error") return TestGapFill::error;
  throw Error(ErrorCode::InvalidConfig, "test_gap_fill must be 'interpolate' or 'error'");
}

CaseExceedsTest parse_case_exceeds_test(std::string_view text) {
  if (text == "raise_tests") return CaseExceedsTest::raise_tests;
  if (text == "error") return CaseExceedsTest::error;
  throw Error(ErrorCode::InvalidConfig, "case_exceeds_test must be 'raise_tests' or 'error'");
}

NegativeValuePolicy parse_negative_value(std::string_view text) {
  if (text == "reject") return NegativeValuePolicy::reject;
  throw Error(ErrorCode::InvalidConfig, "negative_value must be 'reject'");
}

std::string_view to_string(TestGapFill v) noexcept {
  return v == TestGapFill::interpolate ? "interpolate" : "error";
}
std::string_view to_string(CaseExceedsTest v) noexcept {
  return v == CaseExceedsTest::raise_tests ? "raise_tests" : "error";
}
std::string_view to_string(NegativeValuePolicy) noexcept { return "reject"; }

std::vector<CsvRecord> parse_csv(std::string_view text) {
  std::vector<CsvRecord> records;
  if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);

  CsvRecord current;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;  // distinguishes an empty trailing line from a record
  int line = 1;

  auto end_field = [&] {
    current.fields.push_back(std::move(field));
    field.clear();
  };
  auto end_record = [&] {
    end_field();
    records.push_back(std::move(current));
    current = CsvRecord{};
    field_started = false;
  };

  for (std::size_t pos = 0; pos < text.size(); ++pos) {
    const char ch = text[pos];
    const bool record_empty = !field_started && field.empty() && current.fields.empty();
    if (!in_quotes && record_empty && ch != '\n' && ch != '\r') current.line = line;
    if (in_quotes) {
      if (ch == '"') {
        if (pos + 1 < text.size() && text[pos + 1] == '"') {
          field.push_back('"');
          ++pos;
        } else {
          in_quotes = false;
        }
      } else {
        if (ch == '\n') ++line;
        field.push_back(ch);
      }
      continue;
    }
    switch (ch) {
      case '"':
        if (!field.empty()) {
          throw Error(ErrorCode::UnparseableRow, "quote inside unquoted field", std::nullopt, line);
        }
        in_quotes = true;
        field_started = true;
        break;
      case ',':
        field_started = true;
        end_field();
        break;
      case '\r':
        break;
      case '\n':
        if (field_started || !field.empty() || !current.fields.empty()) end_record();
        ++line;
        break;
      default:
        field_started = true;
        field.push_back(ch);
    }
  }
  if (in_quotes) throw Error(ErrorCode::UnparseableRow, "unterminated quoted field", std::nullopt, line);
  if (field_started || !field.empty() || !current.fields.empty()) end_record();
  return records;
}

namespace {

struct RowValues {
  std::optional<double> cases;
  std::optional<double> deaths;
  std::optional<double> tests;
};

std::optional<double> parse_count(const std::string& cell, std::string_view field, int line) {
  std::string_view text = cell;
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) return std::nullopt;
  double value = 0.0;
  const char* first = text.data();
  if (*first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value)) {
    throw Error(ErrorCode::UnparseableRow,
                "cannot parse " + std::string(field) + " value '" + cell + "'", std::nullopt, line);
  }
  if (value != std::floor(value)) {
    throw Error(ErrorCode::UnparseableRow,
                std::string(field) + " must be a whole count, got '" + cell + "'", std::nullopt, line);
  }
  return value;
}

std::size_t column_index(const std::vector<std::string>& header, const std::string& name) {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw Error(ErrorCode::MissingColumn, "column '" + name + "' not in header");
  return static_cast<std::size_t>(it - header.begin());
}

std::string format_number(double v) {
  if (v == std::floor(v) && std::abs(v) < 9.0e15) {
    return std::to_string(static_cast<long long>(v));
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

LoadedDataset load_dataset(std::istream& csv, const ColumnMapping& mapping,
                           const RepairPolicy& policy, std::int64_t population,
                           const DateRange& range, std::string label) {
  if (population <= 0) throw Error(ErrorCode::InvalidConfig, "population must be positive");
  if (days_between(range.start, range.end) < 0) {
    throw Error(ErrorCode::InvalidConfig, "date range end precedes start");
  }
  const std::vector<std::string> names{mapping.date_column, mapping.cases_column,
                                       mapping.deaths_column, mapping.tests_column};
  for (std::size_t a = 0; a < names.size(); ++a) {
    for (std::size_t b = a + 1; b < names.size(); ++b) {
      if (names[a] == names[b]) {
        throw Error(ErrorCode::InvalidConfig, "column '" + names[a] + "' is mapped twice");
      }
    }
  }
  if (mapping.location_column.has_value() != mapping.location.has_value()) {
    throw Error(ErrorCode::InvalidConfig, "location_column and location must be given together");
  }

  const std::string text{std::istreambuf_iterator<char>(csv), std::istreambuf_iterator<char>()};
  const std::vector<CsvRecord> records = parse_csv(text);
  if (records.empty()) throw Error(ErrorCode::MissingColumn, "CSV has no header row");

  const auto& header = records.front().fields;
  const std::size_t date_col = column_index(header, mapping.date_column);
  const std::size_t cases_col = column_index(header, mapping.cases_column);
  const std::size_t deaths_col = column_index(header, mapping.deaths_column);
  const std::size_t tests_col = column_index(header, mapping.tests_column);
  std::optional<std::size_t> location_col;
  if (mapping.location_column) location_col = column_index(header, *mapping.location_column);

  const int k = range.days();
  std::vector<RowValues> rows(static_cast<std::size_t>(k));
  std::vector<bool> seen(static_cast<std::size_t>(k), false);
  std::map<int, double> observed_tests;  // day offset from start (may be outside range)

  for (std::size_t r = 1; r < records.size(); ++r) {
    const CsvRecord& rec = records[r];
    if (rec.fields.size() != header.size()) {
      throw Error(ErrorCode::UnparseableRow,
                  "expected " + std::to_string(header.size()) + " fields, found " +
                      std::to_string(rec.fields.size()),
                  std::nullopt, rec.line);
    }
    if (location_col && rec.fields[*location_col] != *mapping.location) continue;

    Date date;
    try {
      date = parse_date(rec.fields[date_col]);
    } catch (const Error& e) {
      throw Error(ErrorCode::UnparseableRow, e.what(), std::nullopt, rec.line);
    }
    const int offset = days_between(range.start, date);
    const bool in_range = offset >= 0 && offset < k;

    RowValues values{parse_count(rec.fields[cases_col], "cases", rec.line),
                     parse_count(rec.fields[deaths_col], "deaths", rec.line),
                     parse_count(rec.fields[tests_col], "tests", rec.line)};

    if (in_range) {
      const auto idx = static_cast<std::size_t>(offset);
      if (seen[idx]) {
        throw Error(ErrorCode::UnparseableRow, "duplicate date " + format_date(date), std::nullopt,
                    rec.line);
      }
      seen[idx] = true;
      const int day = offset + 1;
      for (const auto& [v, name] : {std::pair{values.cases, "cases"}, std::pair{values.deaths, "deaths"},
                                    std::pair{values.tests, "tests"}}) {
        if (v && *v < 0) {
          throw Error(ErrorCode::PolicyViolation,
                      std::string("negative ") + name + " rejected (line " + std::to_string(rec.line) + ")",
                      day);
        }
      }
      rows[idx] = values;
    }
    if (values.tests && *values.tests >= 0) observed_tests[offset] = *values.tests;
  }

  std::vector<RepairEntry> repairs;
  std::vector<double> cases(static_cast<std::size_t>(k));
  std::vector<double> deaths(static_cast<std::size_t>(k));
  std::vector<double> tests(static_cast<std::size_t>(k));

  for (int j = 0; j < k; ++j) {
    const auto idx = static_cast<std::size_t>(j);
    const int day = j + 1;
    const RowValues& row = rows[idx];

    if (row.cases) {
      cases[idx] = *row.cases;
    } else {
      repairs.push_back({day, "cases", "fill_zero", 0.0});
    }
    if (row.deaths) {
      deaths[idx] = *row.deaths;
    } else {
      repairs.push_back({day, "deaths", "fill_zero", 0.0});
    }

    if (row.tests) {
      tests[idx] = *row.tests;
      continue;
    }
    if (policy.test_gap_fill == TestGapFill::error) {
      throw Error(ErrorCode::PolicyViolation, "tests missing and gap filling is disabled", day);
    }
    const auto after = observed_tests.upper_bound(j);
    if (after == observed_tests.end() || after == observed_tests.begin()) {
      throw Error(ErrorCode::GapUnrepairable,
                  "tests missing with no observed value on both sides", day);
    }
    const auto before = std::prev(after);
    const double frac = static_cast<double>(j - before->first) /
                        static_cast<double>(after->first - before->first);
    tests[idx] = before->second + frac * (after->second - before->second);
    repairs.push_back({day, "tests", "interpolate", tests[idx]});
  }

  for (int j = 0; j < k; ++j) {
    const auto idx = static_cast<std::size_t>(j);
    if (cases[idx] <= tests[idx]) continue;
    if (policy.case_exceeds_test == CaseExceedsTest::error) {
      throw Error(ErrorCode::PolicyViolation, "cases exceed tests", j + 1);
    }
    tests[idx] = cases[idx];
    repairs.push_back({j + 1, "tests", "raise_to_cases", tests[idx]});
  }

  Dataset dataset{DailySeries(range.start, std::move(cases)),
                  DailySeries(range.start, std::move(deaths)),
                  DailySeries(range.start, std::move(tests)), population, std::move(label)};
  return LoadedDataset{validate_dataset(std::move(dataset)), std::move(repairs)};
}

void write_repair_log(std::ostream& out, const std::vector<RepairEntry>& repairs) {
  for (const RepairEntry& r : repairs) {
    const nlohmann::ordered_json line{
        {"day", r.day}, {"field", r.field}, {"action", r.action}, {"value", r.value}};
    out << line.dump() << '\n';
  }
}

void write_dataset_csv(std::ostream& out, const Dataset& ds, const ColumnMapping& mapping) {
  out << mapping.date_column << ',' << mapping.cases_column << ',' << mapping.deaths_column << ','
      << mapping.tests_column << '\n';
  for (std::size_t j = 0; j < ds.size(); ++j) {
    out << format_date(add_days(ds.origin(), static_cast<int>(j))) << ','
        << format_number(ds.cases[j]) << ',' << format_number(ds.deaths[j]) << ','
        << format_number(ds.tests[j]) << '\n';
  }
}

}  // namespace ifrlag
