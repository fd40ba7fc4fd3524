#include "ifrlag_cli/run_config.hpp"

#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "ifrlag/error.hpp"

namespace ifrlag::cli {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

[[noreturn]] void invalid(const std::string& message) {
  throw Error(ErrorCode::InvalidConfig, "config: " + message);
}

void reject_unknown(const ordered_json& object, const std::string& where,
                    std::initializer_list<std::string_view> known) {
  if (!object.is_object()) invalid(where + " must be an object");
  for (const auto& [key, value] : object.items()) {
    bool found = false;
    for (std::string_view k : known) found = found || k == key;
    if (!found) invalid("unknown key '" + (where.empty() ? key : where + "." + key) + "'");
  }
}

const ordered_json& required(const ordered_json& object, const std::string& key, const std::string& where) {
  auto it = object.find(key);
  if (it == object.end()) invalid("missing '" + (where.empty() ? key : where + "." + key) + "'");
  return *it;
}

std::string get_string(const ordered_json& value, const std::string& name) {
  if (!value.is_string()) invalid("'" + name + "' must be a string");
  return value.get<std::string>();
}

double get_number(const ordered_json& value, const std::string& name) {
  if (!value.is_number()) invalid("'" + name + "' must be a number");
  return value.get<double>();
}

std::int64_t get_integer(const ordered_json& value, const std::string& name) {
  if (!value.is_number_integer()) invalid("'" + name + "' must be an integer");
  return value.get<std::int64_t>();
}

Date get_date(const ordered_json& value, const std::string& name) {
  try {
    return parse_date(get_string(value, name));
  } catch (const Error& e) {
    invalid("'" + name + "': " + e.what());
  }
}

void read_mapping(const ordered_json& j, ColumnMapping& m) {
  reject_unknown(j, "columns", {"date", "cases", "deaths", "tests", "location_column", "location"});
  if (j.contains("date")) m.date_column = get_string(j["date"], "columns.date");
  if (j.contains("cases")) m.cases_column = get_string(j["cases"], "columns.cases");
  if (j.contains("deaths")) m.deaths_column = get_string(j["deaths"], "columns.deaths");
  if (j.contains("tests")) m.tests_column = get_string(j["tests"], "columns.tests");
  if (j.contains("location")) {
    m.location = get_string(j["location"], "columns.location");
    m.location_column = j.contains("location_column")
                            ? get_string(j["location_column"], "columns.location_column")
                            : std::string("location");
  } else if (j.contains("location_column")) {
    invalid("columns.location_column given without columns.location");
  }
}

void read_repair(const ordered_json& j, RepairPolicy& p) {
  reject_unknown(j, "repair", {"test_gap_fill", "negative_value", "case_exceeds_test"});
  if (j.contains("test_gap_fill")) p.test_gap_fill = parse_test_gap_fill(get_string(j["test_gap_fill"], "repair.test_gap_fill"));
  if (j.contains("negative_value")) p.negative_value = parse_negative_value(get_string(j["negative_value"], "repair.negative_value"));
  if (j.contains("case_exceeds_test")) {
    p.case_exceeds_test = parse_case_exceeds_test(get_string(j["case_exceeds_test"], "repair.case_exceeds_test"));
  }
}

}  // namespace

std::string fnv1a64_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::Io, "error reading '" + path.string() + "'");
  return std::move(buf).str();
}

RunConfig parse_run_config(const std::string& text, const fs::path& base_dir) {
  RunConfig c;
  try {
    c.source = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    invalid(std::string("not valid JSON: ") + e.what());
  }
  c.checksum = fnv1a64_hex(text);
  const ordered_json& j = c.source;
  reject_unknown(j, "", {"label", "note", "dataset", "columns", "repair", "population", "anchor", "date_range",
                         "interval", "max_lag", "output_dir"});

  c.dataset = base_dir / get_string(required(j, "dataset", ""), "dataset");
  if (!fs::is_regular_file(c.dataset)) invalid("dataset '" + c.dataset.string() + "' does not exist");
  c.label = j.contains("label") ? get_string(j["label"], "label") : c.dataset.stem().string();
  if (j.contains("columns")) read_mapping(j["columns"], c.mapping);
  if (j.contains("repair")) read_repair(j["repair"], c.repair);

  c.population = get_integer(required(j, "population", ""), "population");
  if (c.population <= 0) invalid("population must be positive");

  const ordered_json& range = required(j, "date_range", "");
  reject_unknown(range, "date_range", {"start", "end"});
  c.date_range.start = get_date(required(range, "start", "date_range"), "date_range.start");
  c.date_range.end = get_date(required(range, "end", "date_range"), "date_range.end");
  if (c.date_range.end < c.date_range.start) invalid("date_range.end precedes date_range.start");

  const ordered_json& anchor = required(j, "anchor", "");
  reject_unknown(anchor, "anchor", {"date", "fraction", "count", "source"});
  c.anchor.date = get_date(required(anchor, "date", "anchor"), "anchor.date");
  if (anchor.contains("fraction") == anchor.contains("count")) {
    invalid("anchor needs exactly one of 'fraction' or 'count'");
  }
  if (anchor.contains("fraction")) c.anchor.fraction = get_number(anchor["fraction"], "anchor.fraction");
  if (anchor.contains("count")) c.anchor.count = get_number(anchor["count"], "anchor.count");
  if (c.anchor.date < c.date_range.start || c.date_range.end < c.anchor.date) {
    invalid("anchor.date " + format_date(c.anchor.date) + " lies outside date_range");
  }

  if (j.contains("interval")) {
    const ordered_json& iv = j["interval"];
    reject_unknown(iv, "interval", {"width", "min_trailing", "max_lag"});
    if (iv.contains("width")) c.interval.width = static_cast<int>(get_integer(iv["width"], "interval.width"));
    if (iv.contains("min_trailing")) {
      c.interval.min_trailing = static_cast<int>(get_integer(iv["min_trailing"], "interval.min_trailing"));
    }
    if (iv.contains("max_lag")) c.interval.max_lag = static_cast<int>(get_integer(iv["max_lag"], "interval.max_lag"));
  }
  if (c.interval.width < 2) invalid("interval.width must be at least 2");
  if (c.interval.min_trailing < 1) invalid("interval.min_trailing must be at least 1");
  if (c.interval.max_lag && *c.interval.max_lag < 0) invalid("interval.max_lag must be non-negative");
  if (j.contains("max_lag")) c.max_lag = static_cast<int>(get_integer(j["max_lag"], "max_lag"));
  if (c.max_lag < 0) invalid("max_lag must be non-negative");

  c.output_dir = base_dir / (j.contains("output_dir") ? get_string(j["output_dir"], "output_dir") : std::string("out"));
  return c;
}

RunConfig load_run_config(const fs::path& path) {
  return parse_run_config(read_file(path), path.parent_path());
}

}  // namespace ifrlag::cli
