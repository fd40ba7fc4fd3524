#include "ifrlag/synth.hpp"

#include <cmath>
#include <nlohmann/json.hpp>

#include "ifrlag/random.hpp"

namespace ifrlag {

using nlohmann::json;

namespace {

Error invalid(const std::string& message) { return Error(ErrorCode::InvalidScenario, message); }

}  // namespace

void validate_scenario(const Scenario& s) {
  const auto k = static_cast<int>(s.infections.size());
  if (s.population <= 0) throw invalid("population must be positive");
  if (!(s.m_true > 1.0)) throw invalid("m_true must exceed 1");
  if (s.test_curve.size() != s.infections.size() ||
      s.test_curve.origin() != s.infections.origin()) {
    throw invalid("test curve must align with infections");
  }
  for (int j = 0; j < k; ++j) {
    const auto idx = static_cast<std::size_t>(j);
    if (s.infections[idx] < 0) throw invalid("infections must be non-negative (day " + std::to_string(j + 1) + ")");
    const double t = s.test_curve[idx];
    if (!(t > 0) || t > static_cast<double>(s.population)) {
      throw invalid("tests must lie in (0, N] (day " + std::to_string(j + 1) + ")");
    }
  }
  if (s.regimes.empty()) throw invalid("at least one regime is required");
  int expected_start = 1;
  for (const Regime& r : s.regimes) {
    if (r.start_day != expected_start || r.end_day < r.start_day) {
      throw invalid("regimes must tile [1, k] contiguously in order");
    }
    if (!(r.ifr >= 0.0 && r.ifr <= 1.0)) throw invalid("regime ifr must lie in [0, 1]");
    expected_start = r.end_day + 1;
  }
  if (expected_start != k + 1) throw invalid("regimes must end exactly at day k");
}

DeathMode parse_death_mode(std::string_view text) {
  if (text == "expected") return DeathMode::expected;
  if (text == "sampled") return DeathMode::sampled;
  throw Error(ErrorCode::InvalidConfig, "mode must be 'expected' or 'sampled'");
}

std::string_view to_string(DeathMode mode) noexcept {
  return mode == DeathMode::expected ? "expected" : "sampled";
}

DailySeries generate_deaths(const Scenario& s, DeathMode mode, std::uint64_t seed) {
  validate_scenario(s);
  const std::size_t k = s.infections.size();
  std::vector<double> deaths(k, 0.0);
  const auto all = s.infections.values();

  if (mode == DeathMode::expected) {
    for (const Regime& r : s.regimes) {
      const auto offset = static_cast<std::size_t>(r.start_day - 1);
      const auto slice = all.subspan(offset, static_cast<std::size_t>(r.end_day - r.start_day + 1));
      const ShiftedSeries shifted = shift_expectation_elongated(slice, r.lag);
      for (std::size_t x = 0; x < shifted.values.size() && offset + x < k; ++x) {
        deaths[offset + x] += r.ifr * shifted.values[x];
      }
    }
    return DailySeries(s.infections.origin(), std::move(deaths));
  }

  Rng rng(seed);
  for (const Regime& r : s.regimes) {
    for (int day = r.start_day; day <= r.end_day; ++day) {
      const auto n = std::llround(all[static_cast<std::size_t>(day - 1)]);
      for (long long person = 0; person < n; ++person) {
        if (!rng.bernoulli(r.ifr)) continue;
        const auto target = static_cast<std::size_t>(day - 1 + r.lag.sample(rng));
        if (target < k) deaths[target] += 1.0;
      }
    }
  }
  return DailySeries(s.infections.origin(), std::move(deaths));
}

Dataset generate_observables(const Scenario& s, const DailySeries& deaths) {
  validate_scenario(s);
  if (deaths.size() != s.infections.size()) {
    throw Error(ErrorCode::LengthMismatch, "deaths must align with scenario infections");
  }
  const auto population = static_cast<double>(s.population);
  std::vector<double> cases(s.infections.size());
  for (std::size_t j = 0; j < cases.size(); ++j) {
    cases[j] = s.infections[j] * std::pow(s.test_curve[j] / population, 1.0 / s.m_true);
  }
  Dataset ds{DailySeries(s.infections.origin(), std::move(cases)),
             DailySeries(s.infections.origin(), std::vector<double>(deaths.values().begin(),
                                                                    deaths.values().end())),
             s.test_curve, s.population, s.label};
  try {
    return validate_dataset(std::move(ds));
  } catch (const Error& e) {
    throw Error(ErrorCode::InvalidScenario, std::string("observables violate dataset invariants: ") + e.what(),
                e.day());
  }
}

Dataset generate_observables(const Scenario& s) {
  return generate_observables(s, generate_deaths(s, DeathMode::expected));
}

DailySeries two_peak_infections(Date origin, int days, const TwoPeakShape& shape) {
  if (days < 1) throw Error(ErrorCode::EmptySeries, "need at least one day");
  const double k = days;
  const double mu1 = 0.18 * k;
  const double sd1 = 0.06 * k;
  const double mu2 = 0.68 * k;
  const double sd2 = 0.12 * k;
  std::vector<double> v(static_cast<std::size_t>(days));
  for (int j = 0; j < days; ++j) {
    const double x = j + 1;
    const double z1 = (x - mu1) / sd1;
    const double z2 = (x - mu2) / sd2;
    v[static_cast<std::size_t>(j)] = shape.baseline + shape.first_peak * std::exp(-0.5 * z1 * z1) +
                                     shape.second_peak * std::exp(-0.5 * z2 * z2);
  }
  return DailySeries(origin, std::move(v));
}

DailySeries logistic_test_curve(Date origin, int days, std::int64_t population, double start_rate,
                                double end_rate) {
  if (days < 1) throw Error(ErrorCode::EmptySeries, "need at least one day");
  const double n = static_cast<double>(population);
  auto sigmoid = [](double x) { return 1.0 / (1.0 + std::exp(-10.0 * (x - 0.5))); };
  const double s0 = sigmoid(0.0);
  const double s1 = sigmoid(1.0);
  std::vector<double> v(static_cast<std::size_t>(days));
  for (int j = 0; j < days; ++j) {
    const double x = days == 1 ? 0.5 : static_cast<double>(j) / (days - 1);
    const double rate = start_rate + (end_rate - start_rate) * (sigmoid(x) - s0) / (s1 - s0);
    v[static_cast<std::size_t>(j)] = std::max(1.0, std::round(rate * n));
  }
  return DailySeries(origin, std::move(v));
}

json scenario_to_json(const Scenario& s) {
  json regimes = json::array();
  for (const Regime& r : s.regimes) {
    regimes.push_back({{"start_day", r.start_day},
                       {"end_day", r.end_day},
                       {"ifr", r.ifr},
                       {"lag", {{"kind", "uniform"}, {"a", r.lag.a()}, {"b", r.lag.b()}}}});
  }
  return json{{"label", s.label},
              {"origin", format_date(s.infections.origin())},
              {"population", s.population},
              {"m_true", s.m_true},
              {"infections", std::vector<double>(s.infections.values().begin(), s.infections.values().end())},
              {"tests", std::vector<double>(s.test_curve.values().begin(), s.test_curve.values().end())},
              {"regimes", std::move(regimes)}};
}

Scenario scenario_from_json(const json& j) {
  try {
    const Date origin = parse_date(j.at("origin").get<std::string>());
    const auto population = j.at("population").get<std::int64_t>();

    const json& inf = j.at("infections");
    DailySeries infections = [&] {
      if (inf.is_array()) return DailySeries(origin, inf.get<std::vector<double>>());
      if (inf.value("shape", "") != "two_peak") throw invalid("unknown infections shape");
      TwoPeakShape shape;
      shape.first_peak = inf.value("first_peak", shape.first_peak);
      shape.second_peak = inf.value("second_peak", shape.second_peak);
      shape.baseline = inf.value("baseline", shape.baseline);
      return two_peak_infections(origin, inf.at("days").get<int>(), shape);
    }();

    const json& tst = j.at("tests");
    DailySeries tests = [&] {
      if (tst.is_array()) return DailySeries(origin, tst.get<std::vector<double>>());
      if (tst.value("shape", "") != "logistic") throw invalid("unknown tests shape");
      return logistic_test_curve(origin, static_cast<int>(infections.size()), population,
                                 tst.value("start_rate", 1e-4), tst.value("end_rate", 3e-3));
    }();

    std::vector<Regime> regimes;
    for (const json& r : j.at("regimes")) {
      const json& lag = r.at("lag");
      if (lag.value("kind", "uniform") != "uniform") throw invalid("only uniform lags are supported");
      regimes.push_back(Regime{r.at("start_day").get<int>(), r.at("end_day").get<int>(),
                               r.at("ifr").get<double>(),
                               LagDistribution::uniform(lag.at("a").get<int>(), lag.at("b").get<int>())});
    }

    Scenario s{std::move(infections), std::move(regimes), population, std::move(tests),
               j.value("m_true", 2.0), j.value("label", std::string("synthetic"))};
    validate_scenario(s);
    return s;
  } catch (const json::exception& e) {
    throw invalid(std::string("malformed scenario JSON: ") + e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InvalidScenario) throw;
    throw invalid(e.what());
  }
}

}  // namespace ifrlag
