#include "ifrlag_cli/app.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "ifrlag/ifrlag.hpp"
#include "ifrlag_cli/run_config.hpp"
#include "ifrlag_cli/svg.hpp"

namespace ifrlag::cli {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

int exit_code_for(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InfeasibleAnchorLow:
    case ErrorCode::InfeasibleAnchorHigh:
    case ErrorCode::DegenerateSeries:
      return kExitCalibration;
    case ErrorCode::ZeroShiftedSeries:
    case ErrorCode::ZeroInfectionSeries:
    case ErrorCode::ZeroInfectionWindow:
    case ErrorCode::ZeroDeathSeries:
      return kExitFit;
    default:
      return kExitInput;
  }
}

std::string format_number(double value) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return ec == std::errc{} ? std::string(buf, ptr) : std::string("nan");
}

namespace {

constexpr std::string_view kToolVersion = IFRLAG_VERSION_STRING;

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot write '" + path.string() + "'");
  out << text;
  out.close();
  if (!out) throw Error(ErrorCode::Io, "error writing '" + path.string() + "'");
}

void write_json(const fs::path& path, const ordered_json& j) { write_text(path, j.dump(2) + "\n"); }

void make_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create '" + dir.string() + "': " + ec.message());
}

ordered_json to_json(std::span<const double> values) {
  ordered_json a = ordered_json::array();
  for (double v : values) a.push_back(v);
  return a;
}

// Everything the config-driven commands share: the parsed config and the
// repaired dataset.
struct Run {
  RunConfig config;
  LoadedDataset loaded;
  std::string dataset_checksum;

  const Dataset& data() const { return loaded.dataset; }
};

Run prepare(const std::string& config_path, const std::string& out_dir_override) {
  RunConfig config = load_run_config(config_path);
  if (!out_dir_override.empty()) config.output_dir = out_dir_override;
  const std::string bytes = read_file(config.dataset);
  std::istringstream in(bytes);
  LoadedDataset loaded =
      load_dataset(in, config.mapping, config.repair, config.population, config.date_range, config.label);
  Run run{std::move(config), std::move(loaded), fnv1a64_hex(bytes)};
  make_dir(run.config.output_dir);
  std::ostringstream log;
  write_repair_log(log, run.loaded.repairs);
  write_text(run.config.output_dir / "repairs.jsonl", log.str());
  return run;
}

ordered_json provenance(const Run& run) {
  ordered_json p;
  p["tool"] = "ifrlag";
  p["version"] = std::string(kToolVersion);
  p["checksums"] = {{"algorithm", "fnv1a64"}, {"config", run.config.checksum}, {"dataset", run.dataset_checksum}};
  p["repairs"] = run.loaded.repairs.size();
  return p;
}

AntibodyAnchor make_anchor(const Run& run) {
  const AnchorSpec& a = run.config.anchor;
  return a.fraction ? anchor_from_fraction(run.data(), a.date, *a.fraction)
                    : anchor_at_date(run.data(), a.date, *a.count);
}

ordered_json calibration_json(const Run& run, const CalibrationResult& c) {
  ordered_json j;
  j["m"] = c.m;
  j["achieved_sum"] = c.achieved_sum;
  j["anchor"] = {{"day", c.anchor.day_index},
                 {"date", format_date(run.data().cases.date_of(c.anchor.day_index))},
                 {"infected_count", c.anchor.infected_count}};
  j["iterations"] = c.iterations;
  return j;
}

CalibrationResult calibrate(const Run& run, std::ostream& out) {
  const CalibrationResult c = calibrate_m(run.data(), make_anchor(run));
  char line[160];
  std::snprintf(line, sizeof line, "%s: m = %.6f (anchor %.0f infections by %s, achieved %.0f)\n",
                run.config.label.c_str(), c.m, c.anchor.infected_count,
                format_date(run.data().cases.date_of(c.anchor.day_index)).c_str(), c.achieved_sum);
  out << line;
  return c;
}

ordered_json series_json(const Run& run, const DailySeries& infections, std::span<const double> candidate) {
  ordered_json s;
  s["origin"] = format_date(run.data().origin());
  s["cases"] = to_json(run.data().cases.values());
  s["tests"] = to_json(run.data().tests.values());
  s["infections"] = to_json(infections.values());
  s["deaths"] = to_json(run.data().deaths.values());
  s["candidate_deaths"] = to_json(candidate);
  return s;
}

std::vector<double> copy(std::span<const double> v) { return {v.begin(), v.end()}; }

void write_charts(const fs::path& dir, const Run& run, const DailySeries& infections,
                  std::span<const double> candidate, const std::vector<int>& boundaries) {
  const std::string& label = run.config.label;
  LineChart cases{label + ": reported cases and estimated infections", "day", "people per day",
                  {{"reported cases", "#1f77b4", copy(run.data().cases.values())},
                   {"estimated infections", "#d62728", copy(infections.values())}},
                  boundaries};
  LineChart tests{label + ": daily tests", "day", "tests per day",
                  {{"tests", "#2ca02c", copy(run.data().tests.values())}}, {}};
  LineChart deaths{label + ": reported and candidate deaths", "day", "deaths per day",
                   {{"reported deaths", "#333333", copy(run.data().deaths.values())},
                    {"candidate deaths", "#9467bd", copy(candidate)}},
                   boundaries};
  write_text(dir / "cases_infections.svg", cases.render());
  write_text(dir / "tests.svg", tests.render());
  write_text(dir / "deaths.svg", deaths.render());
}

std::string warning_kinds(const std::vector<Warning>& warnings) {
  std::string s;
  for (const Warning& w : warnings) {
    if (!s.empty()) s += ';';
    s += to_string(w.kind);
  }
  return s;
}

ordered_json warnings_json(const std::vector<Warning>& warnings) {
  ordered_json a = ordered_json::array();
  for (const Warning& w : warnings) a.push_back({{"kind", std::string(to_string(w.kind))}, {"message", w.message}});
  return a;
}

// --- commands ---------------------------------------------------------------

void cmd_calibrate(const std::string& config, const std::string& out_dir, std::ostream& out) {
  const Run run = prepare(config, out_dir);
  const CalibrationResult c = calibrate(run, out);
  ordered_json j;
  j["config"] = run.config.source;
  j["calibration"] = calibration_json(run, c);
  j["provenance"] = provenance(run);
  write_json(run.config.output_dir / "calibration.json", j);
}

void cmd_estimate(const std::string& config, const std::string& out_dir, double m, std::ostream& out) {
  const Run run = prepare(config, out_dir);
  const DailySeries infections = estimate_infections(run.data(), m);
  std::string csv = "date,day,cases,tests,infections\n";
  for (std::size_t j = 0; j < infections.size(); ++j) {
    const int day = static_cast<int>(j) + 1;
    csv += format_date(infections.date_of(day)) + ',' + std::to_string(day) + ',' +
           format_number(run.data().cases[j]) + ',' + format_number(run.data().tests[j]) + ',' +
           format_number(infections[j]) + '\n';
  }
  write_text(run.config.output_dir / "infections.csv", csv);
  char line[160];
  std::snprintf(line, sizeof line, "%s: m = %g, %.0f estimated infections over %zu days (%.2f%% of population)\n",
                run.config.label.c_str(), m, infections.total(), infections.size(),
                100.0 * infections.total() / static_cast<double>(run.config.population));
  out << line;
}

void cmd_fit(const std::string& config, const std::string& out_dir, std::ostream& out) {
  const Run run = prepare(config, out_dir);
  const CalibrationResult c = calibrate(run, out);
  const DailySeries infections = estimate_infections(run.data(), c.m);
  const FitResult f = best_fit(infections.values(), run.data().deaths.values(), FitConfig{run.config.max_lag});
  const std::vector<double> candidate = candidate_deaths(infections.values(), f);

  ordered_json j;
  j["config"] = run.config.source;
  j["calibration"] = calibration_json(run, c);
  j["fit"] = {{"lag_a", f.lag_a}, {"lag_b", f.lag_b}, {"mean_lag", f.mean_lag()}, {"ifr", f.ifr}, {"error", f.error}};
  j["series"] = series_json(run, infections, candidate);
  j["provenance"] = provenance(run);
  write_json(run.config.output_dir / "fit.json", j);

  char line[160];
  std::snprintf(line, sizeof line, "whole period: lag Uniform(%d, %d), IFR %.4f%%, error %.6g\n", f.lag_a, f.lag_b,
                100.0 * f.ifr, f.error);
  out << line;
}

void cmd_fit_intervals(const std::string& config, const std::string& out_dir, std::optional<int> width,
                       std::optional<int> max_lag, std::ostream& out) {
  Run run = prepare(config, out_dir);
  if (width) run.config.interval.width = *width;
  if (max_lag) run.config.interval.max_lag = *max_lag;
  if (run.config.interval.width < 2) throw Error(ErrorCode::InvalidConfig, "--width must be at least 2");
  if (run.config.interval.max_lag && *run.config.interval.max_lag < 0) {
    throw Error(ErrorCode::InvalidConfig, "--max-lag must be non-negative");
  }

  const CalibrationResult c = calibrate(run, out);
  const DailySeries infections = estimate_infections(run.data(), c.m);
  const IntervalReport report = fit_intervals(infections.values(), run.data().deaths.values(), run.config.interval);

  ordered_json config_echo = run.config.source;
  if (width || max_lag) {
    config_echo["overrides"] = ordered_json::object();
    if (width) config_echo["overrides"]["width"] = *width;
    if (max_lag) config_echo["overrides"]["max_lag"] = *max_lag;
  }

  ordered_json windows = ordered_json::array();
  std::string csv = "start_day,end_day,lag_a,lag_b,ifr,error,warnings\n";
  std::vector<int> boundaries;
  out << "window  start       end         lag       IFR        error         warnings\n";
  for (std::size_t n = 0; n < report.windows.size(); ++n) {
    const WindowFit& w = report.windows[n];
    windows.push_back({{"start_day", w.start_day},
                       {"end_day", w.end_day},
                       {"start_date", format_date(run.data().cases.date_of(w.start_day))},
                       {"end_date", format_date(run.data().cases.date_of(w.end_day))},
                       {"lag_a", w.fit.lag_a},
                       {"lag_b", w.fit.lag_b},
                       {"ifr", w.fit.ifr},
                       {"error", w.fit.error},
                       {"warnings", warnings_json(w.warnings)}});
    csv += std::to_string(w.start_day) + ',' + std::to_string(w.end_day) + ',' + std::to_string(w.fit.lag_a) + ',' +
           std::to_string(w.fit.lag_b) + ',' + format_number(w.fit.ifr) + ',' + format_number(w.fit.error) + ',' +
           warning_kinds(w.warnings) + '\n';
    if (n + 1 < report.windows.size()) boundaries.push_back(w.end_day);

    char line[256];
    std::snprintf(line, sizeof line, "%-7zu %s  %s  U(%d,%d)%*s %8.4f%%  %-12.6g  %s\n", n + 1,
                  format_date(run.data().cases.date_of(w.start_day)).c_str(),
                  format_date(run.data().cases.date_of(w.end_day)).c_str(), w.fit.lag_a, w.fit.lag_b,
                  static_cast<int>(std::max<std::size_t>(
                      1, 8 - std::to_string(w.fit.lag_a).size() - std::to_string(w.fit.lag_b).size())),
                  "", 100.0 * w.fit.ifr, w.fit.error, warning_kinds(w.warnings).c_str());
    out << line;
  }
  for (const Warning& w : report.warnings) out << "warning: " << to_string(w.kind) << ": " << w.message << '\n';

  ordered_json j;
  j["config"] = config_echo;
  j["calibration"] = calibration_json(run, c);
  j["windows"] = windows;
  j["warnings"] = warnings_json(report.warnings);
  j["series"] = series_json(run, infections, report.candidate_deaths);
  j["provenance"] = provenance(run);
  write_json(run.config.output_dir / "report.json", j);
  write_text(run.config.output_dir / "intervals.csv", csv);
  write_charts(run.config.output_dir, run, infections, report.candidate_deaths, boundaries);
}

std::vector<double> rounded(std::span<const double> v) {
  std::vector<double> r(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) r[j] = std::round(v[j]);
  return r;
}

void cmd_simulate(const std::string& scenario_path, std::uint64_t seed, const std::string& mode_text,
                  const std::string& out_dir, std::ostream& out) {
  const DeathMode mode = parse_death_mode(mode_text);
  const std::string text = read_file(scenario_path);
  const Scenario scenario = [&] {
    try {
      return scenario_from_json(nlohmann::json::parse(text));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::InvalidScenario, std::string("scenario: ") + e.what());
    }
  }();
  const DailySeries deaths = generate_deaths(scenario, mode, seed);
  const Dataset exact = generate_observables(scenario, deaths);

  // The CSV carries whole counts, as a real feed would.
  const Date origin = exact.origin();
  const Dataset counts = validate_dataset(Dataset{DailySeries(origin, rounded(exact.cases.values())),
                                                  DailySeries(origin, rounded(exact.deaths.values())),
                                                  DailySeries(origin, rounded(exact.tests.values())),
                                                  exact.population, exact.label});
  const fs::path dir = out_dir.empty() ? fs::path(".") : fs::path(out_dir);
  make_dir(dir);
  std::ostringstream csv;
  write_dataset_csv(csv, counts);
  write_text(dir / "dataset.csv", csv.str());

  std::vector<double> cumulative(scenario.infections.size());
  double running = 0.0;
  for (std::size_t j = 0; j < cumulative.size(); ++j) cumulative[j] = running += scenario.infections[j];

  ordered_json truth;
  truth["scenario"] = ordered_json::parse(scenario_to_json(scenario).dump());
  truth["mode"] = std::string(to_string(mode));
  truth["seed"] = seed;
  truth["rng"] = std::string(Rng::algorithm);
  truth["deaths"] = to_json(deaths.values());
  truth["cases"] = to_json(exact.cases.values());
  truth["cumulative_infections"] = to_json(cumulative);
  truth["provenance"] = {{"tool", "ifrlag"},
                         {"version", std::string(kToolVersion)},
                         {"checksums", {{"algorithm", "fnv1a64"}, {"scenario", fnv1a64_hex(text)}}}};
  write_json(dir / "truth.json", truth);

  char line[200];
  std::snprintf(line, sizeof line, "%s: %zu days, %.0f infections, %.0f deaths (%s, seed %llu)\n",
                scenario.label.c_str(), deaths.size(), scenario.infections.total(), deaths.total(),
                std::string(to_string(mode)).c_str(), static_cast<unsigned long long>(seed));
  out << line;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Time-varying infection fatality rate and death-lag estimation"};
  app.name("ifrlag");
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  std::string config;
  std::string out_dir;
  std::optional<int> width;
  std::optional<int> max_lag;
  double m = 0.0;
  std::string scenario;
  std::uint64_t seed = 0;
  std::string mode = "expected";

  auto with_config = [&](CLI::App* sub) {
    sub->add_option("--config", config, "Run configuration (JSON)")->required();
    sub->add_option("--out-dir", out_dir, "Override the config's output directory");
  };
  CLI::App* calibrate_cmd = app.add_subcommand("calibrate", "Find m from the antibody anchor");
  with_config(calibrate_cmd);
  CLI::App* intervals_cmd = app.add_subcommand("fit-intervals", "Fit IFR and lag per interval");
  with_config(intervals_cmd);
  intervals_cmd->add_option("--width", width, "Interval width in days");
  intervals_cmd->add_option("--max-lag", max_lag, "Cap on the lag upper bound");
  CLI::App* fit_cmd = app.add_subcommand("fit", "Fit one IFR and lag over the whole period");
  with_config(fit_cmd);
  CLI::App* estimate_cmd = app.add_subcommand("estimate-infections", "Estimate daily infections for a given m");
  with_config(estimate_cmd);
  estimate_cmd->add_option("--m", m, "Testing-bias exponent (> 1)")->required();
  CLI::App* simulate_cmd = app.add_subcommand("simulate", "Generate a synthetic dataset from a scenario");
  simulate_cmd->add_option("--scenario", scenario, "Scenario (JSON)")->required();
  simulate_cmd->add_option("--seed", seed, "Random seed for sampled deaths");
  simulate_cmd->add_option("--mode", mode, "expected or sampled")->check(CLI::IsMember({"expected", "sampled"}));
  simulate_cmd->add_option("--out-dir", out_dir, "Where to write dataset.csv and truth.json");

  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (calibrate_cmd->parsed()) {
      cmd_calibrate(config, out_dir, out);
    } else if (intervals_cmd->parsed()) {
      cmd_fit_intervals(config, out_dir, width, max_lag, out);
    } else if (fit_cmd->parsed()) {
      cmd_fit(config, out_dir, out);
    } else if (estimate_cmd->parsed()) {
      cmd_estimate(config, out_dir, m, out);
    } else if (simulate_cmd->parsed()) {
      cmd_simulate(scenario, seed, mode, out_dir, out);
    }
  } catch (const Error& e) {
    err << "ifrlag: error: " << e.what() << '\n';
    return exit_code_for(e.code());
  }
  return kExitOk;
}

}  // namespace ifrlag::cli
