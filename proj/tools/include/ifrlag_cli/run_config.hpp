#ifndef IFRLAG_CLI_RUN_CONFIG_HPP
#define IFRLAG_CLI_RUN_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "ifrlag/ingest.hpp"
#include "ifrlag/intervals.hpp"

namespace ifrlag::cli {

/// Seroprevalence anchor as given in a config: exactly one of fraction
/// (share of the population) or count (people).
struct AnchorSpec {
  Date date;
  std::optional<double> fraction;
  std::optional<double> count;
};

/// One country (or synthetic) run. Relative paths in the file are resolved
/// against the directory holding the config.
struct RunConfig {
  std::string label;
  std::filesystem::path dataset;
  ColumnMapping mapping;
  RepairPolicy repair;
  std::int64_t population = 0;
  AnchorSpec anchor;
  DateRange date_range;
  IntervalConfig interval;
  /// Lag cap for the whole-period fit.
  int max_lag = 50;
  std::filesystem::path output_dir;

  /// The config exactly as read, echoed into reports.
  nlohmann::ordered_json source;
  /// FNV-1a 64 of the config file bytes.
  std::string checksum;
};

/// Parses and validates a config. Throws Error with InvalidConfig for bad or
/// unknown keys, anchor dates outside the range or a missing dataset, and
/// Io when the config itself cannot be read.
RunConfig load_run_config(const std::filesystem::path& path);

/// Same, from text already in memory; `base_dir` resolves relative paths.
RunConfig parse_run_config(const std::string& text, const std::filesystem::path& base_dir);

/// Lower-case hex FNV-1a 64 digest.
std::string fnv1a64_hex(std::string_view bytes);

/// Reads a whole file; throws Error(Io) on failure.
std::string read_file(const std::filesystem::path& path);

}  // namespace ifrlag::cli

#endif  // IFRLAG_CLI_RUN_CONFIG_HPP
