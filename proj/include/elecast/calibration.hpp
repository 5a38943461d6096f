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

// Per-state regressions of the state spread on the smoothed national spread,
// and the volatility of the national spread.

#pragma once

#include <cmath>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "elecast/data_ingest.hpp"
#include "elecast/error.hpp"
#include "elecast/ols.hpp"
#include "elecast/states.hpp"
#include "json.hpp"

namespace elecast {

// Fewer state polls than this and the regression is not trusted.
inline constexpr std::size_t kMinPolls = 4;

enum class CalibrationSource { Polls, Historical };

struct StateCalibration {
  std::string state;
  double alpha = 0.0;
  double beta = 0.0;
  double sigma_eps = 0.0;
  std::size_t n_obs = 0;
  CalibrationSource source = CalibrationSource::Polls;
};

struct MarketCalibration {
  double sigma_samp = 0.0;  // pct points per sqrt(day)
  double sigma_m = 0.0;     // pct points per sqrt(day)
  double m_current = 0.0;   // latest smoothed national spread
  double horizon = 0.0;     // days to election at m_current

  double sigma_total() const { return sigma_samp + sigma_m; }
};

inline StateCalibration calibrate_state(std::span<const SpreadObservation> state_obs,
                                        const SmoothedSeries& national,
                                        std::size_t min_polls = kMinPolls) {
  if (state_obs.empty()) throw InsufficientDataError("no state observations", 0);
  const std::string& state = state_obs.front().state;
  for (const auto& o : state_obs) {
    if (o.state != state) {
      throw InputError("calibrate_state mixes states " + state + " and " + o.state);
    }
  }
  const std::size_t n = state_obs.size();
  if (n < std::max<std::size_t>(2, min_polls)) {
    throw InsufficientDataError(state + ": " + std::to_string(n) +
                                    " polls, need " + std::to_string(min_polls),
                                n);
  }
  if (national.grid.empty()) {
    throw InsufficientDataError("empty national series", 0);
  }

  std::vector<double> m, s;
  m.reserve(n);
  s.reserve(n);
  for (const auto& o : state_obs) {
    m.push_back(national.nearest_value(o.t));
    s.push_back(o.spread);
  }
  LineFit fit;
  try {
    fit = fit_line(m, s);
  } catch (const DegenerateDesignError&) {
    throw DegenerateDesignError(state + ": national spread constant across poll dates");
  }
  return {state, fit.intercept, fit.slope, fit.residual_sd, n, CalibrationSource::Polls};
}

// Regression of a state's past results on the national result across years.
inline StateCalibration calibrate_from_historical(const std::string& state,
                                                  std::span<const HistoricalResult> rows) {
  std::vector<double> m, s;
  for (const auto& r : rows) {
    if (r.state != state) continue;
    m.push_back(r.national_spread);
    s.push_back(r.state_spread);
  }
  if (m.size() < 2) {
    throw InsufficientDataError(state + ": fewer than 2 historical rows", m.size());
  }
  LineFit fit;
  try {
    fit = fit_line(m, s);
  } catch (const DegenerateDesignError&) {
    throw DegenerateDesignError(state + ": national spread constant across years");
  }
  return {state, fit.intercept, fit.slope, fit.residual_sd, m.size(),
          CalibrationSource::Historical};
}

// sigma_m is the sample standard deviation of the smoothed series'
// increments, each scaled by 1/sqrt(gap in days). With a single increment
// its absolute value is used. sigma_samp is the mean binomial standard
// error of the spread, 2*sqrt(p(1-p)/n), in percentage points.
inline MarketCalibration calibrate_market(const SmoothedSeries& national,
                                          std::span<const SpreadObservation> polls) {
  const std::size_t g = national.grid.size();
  if (g < 2 || national.values.size() != g) {
    throw InsufficientDataError("market calibration needs at least 2 grid points", g);
  }
  std::vector<double> inc;
  inc.reserve(g - 1);
  for (std::size_t k = 0; k + 1 < g; ++k) {
    const double dt = national.grid[k + 1] - national.grid[k];
    inc.push_back((national.values[k + 1] - national.values[k]) / std::sqrt(dt));
  }

  MarketCalibration mkt;
  if (inc.size() == 1) {
    mkt.sigma_m = std::abs(inc.front());
  } else {
    double mean = 0.0;
    for (double d : inc) mean += d;
    mean /= static_cast<double>(inc.size());
    double ss = 0.0;
    for (double d : inc) ss += (d - mean) * (d - mean);
    mkt.sigma_m = std::sqrt(ss / static_cast<double>(inc.size() - 1));
  }

  double se_sum = 0.0;
  for (const auto& p : polls) {
    if (p.state != kNational) {
      throw InputError("calibrate_market given a non-national poll (" + p.state + ")");
    }
    const double q = p.share_c1;
    se_sum += 2.0 * std::sqrt(q * (1.0 - q) / static_cast<double>(p.sample_size)) * 100.0;
  }
  mkt.sigma_samp = polls.empty() ? 0.0 : se_sum / static_cast<double>(polls.size());
  mkt.m_current = national.values.front();
  mkt.horizon = national.grid.front();
  return mkt;
}

// --- JSON ------------------------------------------------------------------

inline const char* to_string(CalibrationSource s) {
  return s == CalibrationSource::Polls ? "Polls" : "Historical";
}

inline nlohmann::json to_json(const StateCalibration& c) {
  return {{"state", c.state},         {"alpha", c.alpha},
          {"beta", c.beta},           {"sigma_eps", c.sigma_eps},
          {"n_obs", c.n_obs},         {"source", to_string(c.source)}};
}

inline nlohmann::json to_json(const MarketCalibration& m) {
  return {{"sigma_samp", m.sigma_samp},
          {"sigma_m", m.sigma_m},
          {"m_current", m.m_current},
          {"horizon", m.horizon}};
}

// {"market": {...}, "states": {"AK": {...}, ...}}
inline nlohmann::json calibration_to_json(std::span<const StateCalibration> cals,
                                          const MarketCalibration& mkt) {
  nlohmann::json states = nlohmann::json::object();
  for (const auto& c : cals) states[c.state] = to_json(c);
  return {{"market", to_json(mkt)}, {"states", std::move(states)}};
}

struct CalibrationSet {
  std::vector<StateCalibration> states;
  MarketCalibration market;
};

inline CalibrationSet calibration_from_json(const nlohmann::json& j) {
  try {
    CalibrationSet out;
    const auto& m = j.at("market");
    out.market = {m.at("sigma_samp").get<double>(), m.at("sigma_m").get<double>(),
                  m.at("m_current").get<double>(), m.at("horizon").get<double>()};
    for (const auto& [code, s] : j.at("states").items()) {
      StateCalibration c;
      c.state = code;
      c.alpha = s.at("alpha").get<double>();
      c.beta = s.at("beta").get<double>();
      c.sigma_eps = s.at("sigma_eps").get<double>();
      c.n_obs = s.at("n_obs").get<std::size_t>();
      const auto src = s.at("source").get<std::string>();
      if (src != "Polls" && src != "Historical") {
        throw IngestError("unknown calibration source '" + src + "'");
      }
      c.source = src == "Polls" ? CalibrationSource::Polls : CalibrationSource::Historical;
      if (c.sigma_eps < 0) throw IngestError(code + ": negative sigma_eps");
      out.states.push_back(std::move(c));
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw IngestError(std::string("calibration JSON: ") + e.what());
  }
}

}  // namespace elecast
