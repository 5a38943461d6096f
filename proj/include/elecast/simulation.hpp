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

// Monte Carlo forecast: the national spread diffuses as a driftless Brownian
// motion to election day, each state's spread is its regression line at the
// terminal national value plus state noise, and states are converted to
// electoral votes winner-take-all.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <istream>
#include <map>
#include <span>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "elecast/calibration.hpp"
#include "elecast/csv.hpp"
#include "elecast/error.hpp"
#include "elecast/rng.hpp"
#include "elecast/states.hpp"
#include "json.hpp"

namespace elecast {

inline constexpr int kTotalElectoralVotes = 538;
inline constexpr int kVotesToWin = 270;
inline constexpr int kHistogramBins = kTotalElectoralVotes + 1;

struct GaussianNoise {};

// Parameter uncertainty around the OLS fit, redrawn on every path.
struct StudentTNoise {
  double sigma_alpha = 0.01;
  double sigma_beta = 1.0;
  int nu = 3;
};

using NoiseModel = std::variant<GaussianNoise, StudentTNoise>;

struct SimulationConfig {
  std::size_t n_paths = 10000;
  std::uint64_t seed = 0;
  NoiseModel noise_model = GaussianNoise{};
  double win_threshold = 0.0;  // state won iff spread > threshold
  unsigned threads = 1;
};

// Electoral votes per state, ordered by state code.
class EvTable {
 public:
  EvTable() = default;

  explicit EvTable(std::map<std::string, int> votes) : votes_(std::move(votes)) {
    for (const auto& [code, ev] : votes_) {
      if (!is_state_code(code)) throw ConfigError("EV table: unknown state '" + code + "'");
      if (ev <= 0) throw ConfigError("EV table: non-positive votes for " + code);
    }
    if (votes_.size() != kStateCodes.size()) {
      throw ConfigError("EV table has " + std::to_string(votes_.size()) +
                        " entries, expected 51");
    }
    if (total() != kTotalElectoralVotes) {
      throw ConfigError("EV table sums to " + std::to_string(total()) + ", expected 538");
    }
  }

  // CSV with header state,ev.
  static EvTable load(std::istream& in) {
    const csv::Header header(csv::read_header(in));
    const std::size_t c_state = header.require("state");
    const std::size_t c_ev = header.require("ev");
    std::map<std::string, int> votes;
    std::string line;
    while (std::getline(in, line)) {
      if (csv::blank(line)) continue;
      const auto f = csv::split(line);
      const auto ev = f.size() > std::max(c_state, c_ev) ? csv::parse_int(f[c_ev]) : std::nullopt;
      if (!ev) throw ConfigError("EV table: malformed row '" + line + "'");
      if (!votes.emplace(f[c_state], static_cast<int>(*ev)).second) {
        throw ConfigError("EV table: duplicate state " + f[c_state]);
      }
    }
    return EvTable(std::move(votes));
  }

  int at(const std::string& code) const {
    const auto it = votes_.find(code);
    if (it == votes_.end()) throw ConfigError("no electoral votes for state " + code);
    return it->second;
  }

  bool contains(const std::string& code) const { return votes_.count(code) != 0; }

  int total() const {
    int sum = 0;
    for (const auto& [_, ev] : votes_) sum += ev;
    return sum;
  }

  const std::map<std::string, int>& entries() const { return votes_; }
  std::size_t size() const { return votes_.size(); }

 private:
  std::map<std::string, int> votes_;
};

struct PathOutcome {
  double m_terminal = 0.0;
  std::vector<double> state_spreads;  // EvTable order
  int ev_c1 = 0;
};

struct ForecastDistribution {
  std::vector<std::string> states;  // EvTable order
  std::vector<double> p_state;
  double p_national = 0.0;
  std::vector<double> ev_histogram = std::vector<double>(kHistogramBins, 0.0);
  double mean_ev = 0.0;
  std::size_t n_paths = 0;
  std::uint64_t seed = 0;
};

inline double simulate_market_terminal(const MarketCalibration& mkt, std::uint64_t seed,
                                       std::size_t path) {
  if (mkt.horizon < 0) throw ConfigError("negative horizon");
  CounterRng rng(seed, path, 0);
  const double z = rng.normal();
  return mkt.m_current + mkt.sigma_total() * std::sqrt(mkt.horizon) * z;
}

inline std::vector<double> simulate_market_terminals(const MarketCalibration& mkt,
                                                     const SimulationConfig& cfg) {
  std::vector<double> out(cfg.n_paths);
  for (std::size_t j = 0; j < cfg.n_paths; ++j) {
    out[j] = simulate_market_terminal(mkt, cfg.seed, j);
  }
  return out;
}

// Terminal spread of one state given the terminal national spread.
template <class Rng>
double sample_state_noise(const StateCalibration& cal, double m_terminal,
                          const NoiseModel& model, Rng& rng) {
  if (const auto* t = std::get_if<StudentTNoise>(&model)) {
    const double alpha = cal.alpha + t->sigma_alpha * rng.normal();
    const double beta = cal.beta + t->sigma_beta * rng.normal();
    const double scale = std::abs(cal.sigma_eps * rng.normal());
    return alpha + beta * m_terminal + scale * rng.student_t(t->nu);
  }
  return cal.alpha + cal.beta * m_terminal + cal.sigma_eps * rng.normal();
}

inline int aggregate_electoral_votes(const std::map<std::string, double>& state_spreads,
                                     const EvTable& ev, double win_threshold) {
  int total = 0;
  for (const auto& [code, votes] : ev.entries()) {
    const auto it = state_spreads.find(code);
    if (it == state_spreads.end()) throw ConfigError("no spread for state " + code);
    if (it->second > win_threshold) total += votes;
  }
  return total;
}

namespace detail {

inline std::vector<const StateCalibration*> align_calibrations(
    std::span<const StateCalibration> cals, const EvTable& ev) {
  std::map<std::string, const StateCalibration*> by_code;
  for (const auto& c : cals) {
    if (!ev.contains(c.state)) {
      throw ConfigError("calibrated state " + c.state + " has no EV table entry");
    }
    if (!by_code.emplace(c.state, &c).second) {
      throw ConfigError("duplicate calibration for " + c.state);
    }
  }
  std::vector<const StateCalibration*> aligned;
  aligned.reserve(ev.size());
  for (const auto& [code, _] : ev.entries()) {
    const auto it = by_code.find(code);
    if (it == by_code.end()) throw ConfigError("missing calibration for state " + code);
    aligned.push_back(it->second);
  }
  return aligned;
}

inline void validate(const SimulationConfig& cfg) {
  if (cfg.n_paths < 1) throw ConfigError("n_paths must be at least 1");
  if (const auto* t = std::get_if<StudentTNoise>(&cfg.noise_model)) {
    if (t->nu < 1) throw ConfigError("Student-t nu must be at least 1");
    if (t->sigma_alpha < 0 || t->sigma_beta < 0) {
      throw ConfigError("Student-t prior scales must be nonnegative");
    }
  }
}

// One path; state i draws from substream i + 1.
inline PathOutcome simulate_path(std::span<const StateCalibration* const> aligned,
                                 std::span<const int> votes, const MarketCalibration& mkt,
                                 const SimulationConfig& cfg, std::size_t path) {
  PathOutcome out;
  out.m_terminal = simulate_market_terminal(mkt, cfg.seed, path);
  out.state_spreads.resize(aligned.size());
  for (std::size_t i = 0; i < aligned.size(); ++i) {
    CounterRng rng(cfg.seed, path, i + 1);
    const double s = sample_state_noise(*aligned[i], out.m_terminal, cfg.noise_model, rng);
    out.state_spreads[i] = s;
    if (s > cfg.win_threshold) out.ev_c1 += votes[i];
  }
  return out;
}

}  // namespace detail

// Every path in order; intended for inspection and tests.
inline std::vector<PathOutcome> simulate_paths(std::span<const StateCalibration> cals,
                                               const MarketCalibration& mkt, const EvTable& ev,
                                               const SimulationConfig& cfg) {
  detail::validate(cfg);
  const auto aligned = detail::align_calibrations(cals, ev);
  std::vector<int> votes;
  for (const auto& [_, v] : ev.entries()) votes.push_back(v);
  std::vector<PathOutcome> out;
  out.reserve(cfg.n_paths);
  for (std::size_t j = 0; j < cfg.n_paths; ++j) {
    out.push_back(detail::simulate_path(aligned, votes, mkt, cfg, j));
  }
  return out;
}

// Results depend only on (inputs, seed, n_paths), never on cfg.threads.
inline ForecastDistribution run_forecast(std::span<const StateCalibration> cals,
                                         const MarketCalibration& mkt, const EvTable& ev,
                                         const SimulationConfig& cfg) {
  detail::validate(cfg);
  const auto aligned = detail::align_calibrations(cals, ev);
  std::vector<int> votes;
  for (const auto& [_, v] : ev.entries()) votes.push_back(v);
  const std::size_t n_states = aligned.size();

  struct Tally {
    std::vector<std::uint64_t> state_wins;
    std::vector<std::uint64_t> ev_counts;
    std::uint64_t ev_sum = 0;
  };
  const unsigned n_threads = static_cast<unsigned>(
      std::clamp<std::size_t>(cfg.threads == 0 ? 1 : cfg.threads, 1, cfg.n_paths));
  std::vector<Tally> tallies(n_threads, Tally{std::vector<std::uint64_t>(n_states, 0),
                                              std::vector<std::uint64_t>(kHistogramBins, 0)});

  const auto work = [&](unsigned w) {
    Tally& t = tallies[w];
    const std::size_t begin = cfg.n_paths * w / n_threads;
    const std::size_t end = cfg.n_paths * (w + 1) / n_threads;
    for (std::size_t j = begin; j < end; ++j) {
      const auto path = detail::simulate_path(aligned, votes, mkt, cfg, j);
      for (std::size_t i = 0; i < n_states; ++i) {
        if (path.state_spreads[i] > cfg.win_threshold) ++t.state_wins[i];
      }
      ++t.ev_counts[path.ev_c1];
      t.ev_sum += static_cast<std::uint64_t>(path.ev_c1);
    }
  };
  if (n_threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n_threads);
    for (unsigned w = 0; w < n_threads; ++w) pool.emplace_back(work, w);
  }

  // Integer tallies, so the merge is order-independent.
  Tally total{std::vector<std::uint64_t>(n_states, 0),
              std::vector<std::uint64_t>(kHistogramBins, 0)};
  for (const auto& t : tallies) {
    for (std::size_t i = 0; i < n_states; ++i) total.state_wins[i] += t.state_wins[i];
    for (int k = 0; k < kHistogramBins; ++k) total.ev_counts[k] += t.ev_counts[k];
    total.ev_sum += t.ev_sum;
  }

  const double n = static_cast<double>(cfg.n_paths);
  ForecastDistribution out;
  out.n_paths = cfg.n_paths;
  out.seed = cfg.seed;
  for (const auto& [code, _] : ev.entries()) out.states.push_back(code);
  out.p_state.resize(n_states);
  for (std::size_t i = 0; i < n_states; ++i) {
    out.p_state[i] = static_cast<double>(total.state_wins[i]) / n;
  }
  for (int k = 0; k < kHistogramBins; ++k) {
    out.ev_histogram[k] = static_cast<double>(total.ev_counts[k]) / n;
  }
  for (int k = kVotesToWin; k < kHistogramBins; ++k) out.p_national += out.ev_histogram[k];
  out.mean_ev = static_cast<double>(total.ev_sum) / n;
  return out;
}

struct DailyInputs {
  double day = 0.0;  // days to election
  std::vector<StateCalibration> states;
  MarketCalibration market;
};

struct ProbabilityPoint {
  double day = 0.0;
  double p_national = 0.0;
  std::vector<double> p_state;  // EvTable order
};

// One forecast per day with the same seed, so consecutive days share their
// random numbers and differ only through their inputs.
inline std::vector<ProbabilityPoint> probability_time_series(std::span<const DailyInputs> days,
                                                             const EvTable& ev,
                                                             const SimulationConfig& cfg) {
  std::vector<ProbabilityPoint> out;
  out.reserve(days.size());
  for (const auto& d : days) {
    const auto f = run_forecast(d.states, d.market, ev, cfg);
    out.push_back({d.day, f.p_national, f.p_state});
  }
  return out;
}

inline nlohmann::json to_json(const NoiseModel& model) {
  if (const auto* t = std::get_if<StudentTNoise>(&model)) {
    return {{"kind", "student_t"},
            {"sigma_alpha", t->sigma_alpha},
            {"sigma_beta", t->sigma_beta},
            {"nu", t->nu}};
  }
  return {{"kind", "gaussian"}};
}

inline nlohmann::json to_json(const ForecastDistribution& f) {
  nlohmann::json p_state = nlohmann::json::object();
  for (std::size_t i = 0; i < f.states.size(); ++i) p_state[f.states[i]] = f.p_state[i];
  return {{"n_paths", f.n_paths},     {"seed", f.seed},
          {"p_national", f.p_national}, {"mean_ev", f.mean_ev},
          {"p_state", std::move(p_state)}, {"ev_histogram", f.ev_histogram}};
}

inline ForecastDistribution forecast_from_json(const nlohmann::json& j) {
  try {
    ForecastDistribution f;
    f.n_paths = j.at("n_paths").get<std::size_t>();
    f.seed = j.at("seed").get<std::uint64_t>();
    f.p_national = j.at("p_national").get<double>();
    f.mean_ev = j.value("mean_ev", 0.0);
    for (const auto& [code, p] : j.at("p_state").items()) {
      f.states.push_back(code);
      f.p_state.push_back(p.get<double>());
    }
    f.ev_histogram = j.at("ev_histogram").get<std::vector<double>>();
    if (f.ev_histogram.size() != static_cast<std::size_t>(kHistogramBins)) {
      throw IngestError("ev_histogram must have 539 entries");
    }
    return f;
  } catch (const nlohmann::json::exception& e) {
    throw IngestError(std::string("forecast JSON: ") + e.what());
  }
}

}  // namespace elecast
