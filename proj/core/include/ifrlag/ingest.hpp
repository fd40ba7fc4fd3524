#ifndef IFRLAG_INGEST_HPP
#define IFRLAG_INGEST_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ifrlag/domain.hpp"

namespace ifrlag {

/// Which CSV columns hold which series. Defaults follow the Our World in Data
/// COVID-19 export.
struct ColumnMapping {
  std::string date_column = "date";
  std::string cases_column = "new_cases";
  std::string deaths_column = "new_deaths";
  std::string tests_column = "new_tests";
  /// Multi-region files: keep only rows whose `location_column` equals
  /// `location`. Both must be set together.
  std::optional<std::string> location_column;
  std::optional<std::string> location;
};

enum class TestGapFill { interpolate, error };
enum class NegativeValuePolicy { reject };
enum class CaseExceedsTest { raise_tests, error };

struct RepairPolicy {
  TestGapFill test_gap_fill = TestGapFill::interpolate;
  NegativeValuePolicy negative_value = NegativeValuePolicy::reject;
  CaseExceedsTest case_exceeds_test = CaseExceedsTest::raise_tests;
};

TestGapFill parse_test_gap_fill(std::string_view text);
CaseExceedsTest parse_case_exceeds_test(std::string_view text);
NegativeValuePolicy parse_negative_value(std::string_view text);
std::string_view to_string(TestGapFill v) noexcept;
std::string_view to_string(CaseExceedsTest v) noexcept;
std::string_view to_string(NegativeValuePolicy v) noexcept;

/// Inclusive calendar range.
struct DateRange {
  Date start;
  Date end;

  int days() const { return days_between(start, end) + 1; }
};

struct RepairEntry {
  int day = 0;  // 1-based
  std::string field;
  std::string action;
  double value = 0.0;

  friend bool operator==(const RepairEntry&, const RepairEntry&) = default;
};

struct LoadedDataset {
  Dataset dataset;
  std::vector<RepairEntry> repairs;
};

/// Parses an RFC 4180 CSV (header row required, ISO-8601 dates) into a
/// validated Dataset covering exactly `range`.
///
/// Repairs, each logged:
///  - missing cases or deaths (blank cell or absent row) become 0;
///  - missing tests are linearly interpolated between the nearest observed
///    tests on either side, which may lie outside the range;
///  - tests below cases are raised to cases.
///
/// Errors: MissingColumn, UnparseableRow (line number), GapUnrepairable,
/// PolicyViolation, InvalidConfig.
LoadedDataset load_dataset(std::istream& csv, const ColumnMapping& mapping,
                           const RepairPolicy& policy, std::int64_t population,
                           const DateRange& range, std::string label = {});

/// One JSON object per line: {"day":..,"field":..,"action":..,"value":..}.
void write_repair_log(std::ostream& out, const std::vector<RepairEntry>& repairs);

/// Writes a dataset in the format load_dataset reads.
void write_dataset_csv(std::ostream& out, const Dataset& dataset, const ColumnMapping& mapping = {});

/// Splits RFC 4180 text into records. Exposed for testing.
struct CsvRecord {
  int line = 0;  // 1-based line on which the record starts
  std::vector<std::string> fields;
};
std::vector<CsvRecord> parse_csv(std::string_view text);

}  // namespace ifrlag

#endif  // IFRLAG_INGEST_HPP
