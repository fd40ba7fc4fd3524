#ifndef IFRLAG_SYNTH_HPP
#define IFRLAG_SYNTH_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "ifrlag/domain.hpp"
#include "ifrlag/lag.hpp"

namespace ifrlag {

/// Ground-truth IFR and lag applying to infections on days [start_day, end_day].
struct Regime {
  int start_day = 1;
  int end_day = 1;
  double ifr = 0.0;
  LagDistribution lag = LagDistribution::uniform(0, 0);
};

struct Scenario {
  DailySeries infections;
  std::vector<Regime> regimes;
  std::int64_t population = 0;
  DailySeries test_curve;
  double m_true = 2.0;
  std::string label = "synthetic";
};

/// Throws InvalidScenario unless regimes tile [1, k] in order, every ifr is
/// in [0, 1], infections are non-negative and tests lie in (0, N].
void validate_scenario(const Scenario& scenario);

enum class DeathMode { expected, sampled };

DeathMode parse_death_mode(std::string_view text);
std::string_view to_string(DeathMode mode) noexcept;

/// Deaths caused by the scenario's infections.
///
/// expected: sum over regimes of ifr * elongated shift of the regime's
///   infections, cut to k days. Never rounds.
/// sampled: each regime day's infections are rounded to the nearest integer;
///   every infected person dies with probability ifr and, if so, dies after
///   a lag drawn from the regime's law. Deaths past day k are dropped.
///   Deterministic for a given seed (see Rng).
DailySeries generate_deaths(const Scenario& scenario, DeathMode mode, std::uint64_t seed = 0);

/// Cases implied by the testing-bias model at m_true, i.e.
/// cases_j = infections_j * (tests_j / N)^(1/m_true), paired with the test
/// curve and the given deaths. Throws InvalidScenario if cases exceed tests.
Dataset generate_observables(const Scenario& scenario, const DailySeries& deaths);
/// Same with expected-mode deaths.
Dataset generate_observables(const Scenario& scenario);

struct TwoPeakShape {
  double first_peak = 60000.0;
  double second_peak = 120000.0;
  double baseline = 2000.0;
};

/// Two Gaussian bumps on a constant floor: the first early and narrow, the
/// second later and wider. A test fixture, not an epidemic model.
DailySeries two_peak_infections(Date origin, int days, const TwoPeakShape& shape = {});

/// Daily tests following a logistic ramp from exactly start_rate * N on the
/// first day to end_rate * N on the last, rounded to whole tests.
DailySeries logistic_test_curve(Date origin, int days, std::int64_t population,
                                double start_rate = 1e-4, double end_rate = 3e-3);

nlohmann::json scenario_to_json(const Scenario& scenario);
/// Accepts explicit arrays, or {"shape": ...} generator specs for
/// infections ("two_peak") and tests ("logistic").
Scenario scenario_from_json(const nlohmann::json& json);

}  // namespace ifrlag

#endif  // IFRLAG_SYNTH_HPP
