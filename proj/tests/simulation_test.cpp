// Copyright 2026 The elecast Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "elecast/simulation.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "test_support.hpp"

namespace elecast {
namespace {

using testing::ev_2016;
using testing::uniform_calibrations;

double mean(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / v.size();
}

double variance(const std::vector<double>& v) {
  const double m = mean(v);
  double ss = 0;
  for (double x : v) ss += (x - m) * (x - m);
  return ss / (v.size() - 1);
}

TEST(CounterRng, SameKeySameStream) {
  CounterRng a(42, 7, 3), b(42, 7, 3), c(42, 7, 4), d(43, 7, 3);
  for (int i = 0; i < 100; ++i) {
    const auto x = a();
    EXPECT_EQ(x, b());
    EXPECT_NE(x, c());
    EXPECT_NE(x, d());
  }
}

TEST(CounterRng, UniformInUnitInterval) {
  CounterRng r(1, 0, 0);
  for (int i = 0; i < 100000; ++i) {
    const double u = r.uniform();
    ASSERT_GT(u, 0.0);
    ASSERT_LE(u, 1.0);
  }
}

TEST(CounterRng, NormalMoments) {
  CounterRng r(2024, 0, 0);
  std::vector<double> z(200000);
  for (auto& v : z) v = r.normal();
  // standard errors: mean 0.0022, variance 0.0032
  EXPECT_NEAR(mean(z), 0.0, 0.01);
  EXPECT_NEAR(variance(z), 1.0, 0.015);
}

TEST(CounterRng, StudentTIsSymmetricWithHeavyTails) {
  CounterRng r(99, 0, 0);
  const int n = 200000;
  int neg = 0, beyond3 = 0;
  for (int i = 0; i < n; ++i) {
    const double t = r.student_t(3);
    neg += t < 0;
    beyond3 += std::abs(t) > 3.182446305284263;  // two-sided 5% point of t(3)
  }
  EXPECT_NEAR(static_cast<double>(neg) / n, 0.5, 0.01);
  EXPECT_NEAR(static_cast<double>(beyond3) / n, 0.05, 0.004);
}

TEST(EvTable, Loads2016Apportionment) {
  const auto& ev = ev_2016();
  EXPECT_EQ(ev.size(), 51u);
  EXPECT_EQ(ev.total(), 538);
  EXPECT_EQ(ev.at("CA"), 55);
  EXPECT_EQ(ev.at("TX"), 38);
  EXPECT_EQ(ev.at("DC"), 3);
  EXPECT_THROW(ev.at("US"), ConfigError);
}

TEST(EvTable, RejectsBadTables) {
  auto votes = ev_2016().entries();
  votes["CA"] = 56;
  EXPECT_THROW(EvTable{votes}, ConfigError);
  votes = ev_2016().entries();
  votes.erase("WY");
  EXPECT_THROW(EvTable{votes}, ConfigError);
  std::istringstream dup("state,ev\nCA,55\nCA,55\n");
  EXPECT_THROW(EvTable::load(dup), ConfigError);
}

TEST(AggregateElectoralVotes, WinnerTakeAll) {
  std::map<std::string, double> spreads;
  for (auto code : kStateCodes) spreads[std::string(code)] = -1.0;
  EXPECT_EQ(aggregate_electoral_votes(spreads, ev_2016(), 0.0), 0);
  spreads["CA"] = 3.0;
  spreads["TX"] = 0.5;
  EXPECT_EQ(aggregate_electoral_votes(spreads, ev_2016(), 0.0), 93);
  // Strict inequality: spread equal to the threshold is a loss.
  EXPECT_EQ(aggregate_electoral_votes(spreads, ev_2016(), 0.5), 55);
  for (auto& [_, s] : spreads) s = 1.0;
  EXPECT_EQ(aggregate_electoral_votes(spreads, ev_2016(), 0.0), 538);
  spreads.erase("OH");
  EXPECT_THROW(aggregate_electoral_votes(spreads, ev_2016(), 0.0), ConfigError);
}

TEST(MarketTerminal, ZeroVolatilityOrHorizonIsDeterministic) {
  MarketCalibration m{0.0, 0.0, 3.5, 30};
  EXPECT_EQ(simulate_market_terminal(m, 1, 0), 3.5);
  m = {1.0, 1.0, 3.5, 0};
  EXPECT_EQ(simulate_market_terminal(m, 1, 0), 3.5);
  m.horizon = -1;
  EXPECT_THROW(simulate_market_terminal(m, 1, 0), ConfigError);
}

TEST(MarketTerminal, VarianceScalesWithHorizon) {
  SimulationConfig cfg;
  cfg.n_paths = 20000;
  cfg.seed = 5;
  const auto a = simulate_market_terminals({0.5, 0.5, 0.0, 16}, cfg);
  const auto b = simulate_market_terminals({0.5, 0.5, 0.0, 64}, cfg);
  EXPECT_NEAR(variance(a), 16.0, 16.0 * 0.05);
  EXPECT_NEAR(variance(b), 64.0, 64.0 * 0.05);
}

TEST(SampleStateNoise, GaussianMatchesRegressionLine) {
  const StateCalibration cal{"OH", 1.0, 2.0, 0.0, 10, CalibrationSource::Polls};
  CounterRng r(1, 0, 1);
  EXPECT_DOUBLE_EQ(sample_state_noise(cal, 3.0, GaussianNoise{}, r), 7.0);
}

TEST(SampleStateNoise, StudentTCentredOnRegressionLine) {
  const StateCalibration cal{"OH", 1.0, 2.0, 1.5, 10, CalibrationSource::Polls};
  std::vector<double> draws;
  for (std::size_t j = 0; j < 40000; ++j) {
    CounterRng r(3, j, 1);
    draws.push_back(sample_state_noise(cal, 0.5, StudentTNoise{}, r));
  }
  std::sort(draws.begin(), draws.end());
  EXPECT_NEAR(draws[draws.size() / 2], 2.0, 0.05);
}

TEST(RunForecast, RequiresCompleteCalibration) {
  auto cals = uniform_calibrations(0, 1, 1);
  const MarketCalibration m{0.5, 0.5, 0, 10};
  SimulationConfig cfg;
  cfg.n_paths = 10;
  cals.pop_back();
  EXPECT_THROW(run_forecast(cals, m, ev_2016(), cfg), ConfigError);
  cals = uniform_calibrations(0, 1, 1);
  cals.push_back(cals.front());
  EXPECT_THROW(run_forecast(cals, m, ev_2016(), cfg), ConfigError);
  cfg.n_paths = 0;
  EXPECT_THROW(run_forecast(uniform_calibrations(0, 1, 1), m, ev_2016(), cfg), ConfigError);
}

TEST(RunForecast, HistogramIsADistributionConsistentWithPaths) {
  const auto cals = uniform_calibrations(0.5, 1.0, 3.0);
  const MarketCalibration m{0.5, 0.5, 1.0, 20};
  SimulationConfig cfg;
  cfg.n_paths = 2000;
  cfg.seed = 11;
  const auto f = run_forecast(cals, m, ev_2016(), cfg);
  const auto paths = simulate_paths(cals, m, ev_2016(), cfg);
  ASSERT_EQ(f.ev_histogram.size(), 539u);
  EXPECT_NEAR(std::accumulate(f.ev_histogram.begin(), f.ev_histogram.end(), 0.0), 1.0, 1e-12);

  std::vector<int> counts(539, 0);
  double ev_sum = 0;
  int national = 0;
  for (const auto& p : paths) {
    ++counts[p.ev_c1];
    ev_sum += p.ev_c1;
    national += p.ev_c1 >= 270;
  }
  for (int k = 0; k < 539; ++k) EXPECT_DOUBLE_EQ(f.ev_histogram[k], counts[k] / 2000.0);
  EXPECT_NEAR(f.p_national, national / 2000.0, 1e-12);
  EXPECT_NEAR(f.mean_ev, ev_sum / 2000.0, 1e-12);
  for (double p : f.p_state) {
    EXPECT_GE(p, 0.0);
    EXPECT_LE(p, 1.0);
  }
}

TEST(RunForecast, ThreadCountDoesNotChangeResults) {
  const auto cals = uniform_calibrations(0.2, 1.1, 2.0);
  const MarketCalibration m{0.4, 0.3, 0.5, 30};
  SimulationConfig cfg;
  cfg.n_paths = 3001;
  cfg.seed = 8;
  cfg.noise_model = StudentTNoise{};
  const auto one = to_json(run_forecast(cals, m, ev_2016(), cfg)).dump();
  for (unsigned t : {2u, 3u, 7u}) {
    cfg.threads = t;
    EXPECT_EQ(to_json(run_forecast(cals, m, ev_2016(), cfg)).dump(), one) << t;
  }
}

TEST(RunForecast, LandslideIsCertain) {
  const auto cals = uniform_calibrations(0.0, 2.0, 0.5);
  const MarketCalibration m{0.01, 0.01, 40.0, 2};
  SimulationConfig cfg;
  cfg.n_paths = 1000;
  const auto f = run_forecast(cals, m, ev_2016(), cfg);
  EXPECT_EQ(f.p_national, 1.0);
  EXPECT_EQ(f.ev_histogram[538], 1.0);
  for (double p : f.p_state) EXPECT_EQ(p, 1.0);
}

TEST(RunForecast, MoreVolatilityNeverSharpensAFavourite) {
  const auto cals = uniform_calibrations(0.0, 1.0, 1.0);
  SimulationConfig cfg;
  cfg.n_paths = 4000;
  cfg.seed = 17;
  double prev = 1.0;
  for (double sigma : {0.1, 0.3, 0.6, 1.2}) {
    const auto f = run_forecast(cals, {sigma, 0.0, 2.0, 50}, ev_2016(), cfg);
    EXPECT_LE(f.p_national, prev + 0.02) << sigma;
    prev = f.p_national;
  }
}

TEST(ProbabilityTimeSeries, OnePointPerDay) {
  std::vector<DailyInputs> days = {
      {30, uniform_calibrations(0, 1, 1), {0.3, 0.3, 2, 30}},
      {10, uniform_calibrations(0, 1, 1), {0.3, 0.3, 2, 10}},
  };
  SimulationConfig cfg;
  cfg.n_paths = 2000;
  cfg.seed = 4;
  const auto ts = probability_time_series(days, ev_2016(), cfg);
  ASSERT_EQ(ts.size(), 2u);
  EXPECT_EQ(ts[0].day, 30);
  EXPECT_EQ(ts[0].p_state.size(), 51u);
  // Same lead, shorter horizon: more confident.
  EXPECT_GE(ts[1].p_national, ts[0].p_national);
}

TEST(ForecastJson, RoundTrip) {
  SimulationConfig cfg;
  cfg.n_paths = 500;
  cfg.seed = 3;
  const auto f = run_forecast(uniform_calibrations(1, 1, 2), {0.2, 0.2, 0, 10}, ev_2016(), cfg);
  const auto back = forecast_from_json(nlohmann::json::parse(to_json(f).dump()));
  EXPECT_EQ(back.n_paths, 500u);
  EXPECT_EQ(back.seed, 3u);
  EXPECT_EQ(back.p_national, f.p_national);
  EXPECT_EQ(back.ev_histogram, f.ev_histogram);
  EXPECT_EQ(back.states, f.states);
  EXPECT_EQ(to_json(NoiseModel{StudentTNoise{}})["nu"], 3);
  EXPECT_THROW(forecast_from_json(nlohmann::json::object()), IngestError);
}

TEST(SampleStateNoise, StudentTWithDegeneratePriorsIsTheLine) {
  const StateCalibration cal{"OH", 1.0, 2.0, 0.0, 10, CalibrationSource::Polls};
  const StudentTNoise flat{0.0, 0.0, 3};
  for (std::size_t j = 0; j < 100; ++j) {
    CounterRng r(6, j, 1);
    EXPECT_EQ(sample_state_noise(cal, 3.0, flat, r), 7.0);
  }
}

TEST(SampleStateNoise, ScaleMixtureSpread) {
  // alpha = beta = 0, unit sigma: draws are |N| t_3 with sd sqrt(1 * 3).
  const StateCalibration cal{"OH", 0.0, 0.0, 1.0, 10, CalibrationSource::Polls};
  const StudentTNoise model{0.0, 0.0, 3};
  std::vector<double> x;
  for (std::size_t j = 0; j < 100000; ++j) {
    CounterRng r(2016, j, 1);
    x.push_back(sample_state_noise(cal, 0.0, model, r));
  }
  const double sd = std::sqrt(variance(x));
  EXPECT_NEAR(sd, std::sqrt(3.0), 0.1 * std::sqrt(3.0)) << sd;
}

TEST(RunForecast, ElectionDayWithoutStateNoiseIsDecided) {
  const MarketCalibration m{0.5, 0.5, 2.0, 0};
  SimulationConfig cfg;
  cfg.n_paths = 200;
  // m = 2: spreads alpha + 2 everywhere.
  const auto win = run_forecast(uniform_calibrations(-1.0, 1.0, 0.0), m, ev_2016(), cfg);
  EXPECT_EQ(win.p_national, 1.0);
  EXPECT_EQ(win.ev_histogram[538], 1.0);
  const auto lose = run_forecast(uniform_calibrations(-3.0, 1.0, 0.0), m, ev_2016(), cfg);
  EXPECT_EQ(lose.p_national, 0.0);
}

TEST(RunForecast, MonotoneInWinThreshold) {
  const auto cals = uniform_calibrations(0.5, 1.0, 3.0);
  const MarketCalibration m{0.3, 0.3, 1.0, 25};
  SimulationConfig cfg;
  cfg.n_paths = 3000;
  cfg.seed = 12;
  double prev = 1.0;
  for (double thr = -6; thr <= 6; thr += 0.5) {
    cfg.win_threshold = thr;
    const auto f = run_forecast(cals, m, ev_2016(), cfg);
    EXPECT_LE(f.p_national, prev) << thr;
    prev = f.p_national;
  }
}

TEST(RunForecast, HugeMarketVolatilityTendsToACoinFlip) {
  const auto cals = uniform_calibrations(0.0, 1.0, 2.0);
  SimulationConfig cfg;
  cfg.n_paths = 10000;
  cfg.seed = 13;
  const auto f = run_forecast(cals, {50.0, 50.0, 3.0, 400}, ev_2016(), cfg);
  EXPECT_GE(f.p_national, 0.45);
  EXPECT_LE(f.p_national, 0.55);
}

TEST(ProbabilityTimeSeries, ConstantInputsDifferOnlyThroughHorizon) {
  const auto cals = uniform_calibrations(0, 1, 1);
  std::vector<DailyInputs> days = {{12, cals, {0.3, 0.3, 1.5, 12}},
                                   {11, cals, {0.3, 0.3, 1.5, 12}},
                                   {10, cals, {0.3, 0.3, 1.5, 10}}};
  SimulationConfig cfg;
  cfg.n_paths = 2000;
  cfg.seed = 14;
  const auto ts = probability_time_series(days, ev_2016(), cfg);
  EXPECT_EQ(ts[0].p_national, ts[1].p_national);
  EXPECT_EQ(ts[0].p_state, ts[1].p_state);
  EXPECT_NE(ts[1].p_state, ts[2].p_state);
}

}  // namespace
}  // namespace elecast
