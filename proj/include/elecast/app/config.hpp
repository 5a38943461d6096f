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

// Run configuration: a key = value file ('#' starts a comment) with
// command-line overrides applied on top. Relative file paths are resolved
// against the directory of the config file.

#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "elecast/csv.hpp"
#include "elecast/error.hpp"
#include "elecast/simulation.hpp"

namespace elecast::app {

namespace fs = std::filesystem;

enum class LossMode { Quadratic, Trading };
enum class ReferenceMode { Market, PairMean };

struct RunConfig {
  std::optional<Date> election_date;
  std::size_t paths = 10000;
  std::optional<std::uint64_t> seed;
  double bandwidth = 5.0;
  NoiseModel noise_model = GaussianNoise{};
  double win_threshold = 0.0;
  std::size_t min_polls = 4;
  std::optional<double> sigma_samp;  // overrides the poll-based estimate
  unsigned threads = 1;
  int ts_step = 1;                   // days between time-series points

  fs::path polls, historical, ev_table, calibration;
  fs::path experts, reference;
  fs::path forecasts, realizations, histograms;
  fs::path out_dir = ".";

  std::vector<std::string> metrics = {"brier", "log", "selten", "spherical", "cdf"};
  LossMode loss = LossMode::Trading;
  ReferenceMode reference_mode = ReferenceMode::Market;
  std::optional<int> realization;     // binary outcome for trade / aggregate
  std::optional<std::size_t> horizon; // rounds assumed by the learner

  std::vector<double> curve_means = {200.0, 270.0, 340.0};
  std::vector<double> curve_sds = {20.0, 40.0};

  SimulationConfig simulation() const {
    if (!seed) throw ConfigError("seed is required (set seed = ... or pass --seed)");
    SimulationConfig s;
    s.n_paths = paths;
    s.seed = *seed;
    s.noise_model = noise_model;
    s.win_threshold = win_threshold;
    s.threads = threads;
    return s;
  }
};

namespace detail {

inline std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  for (auto& f : csv::split(v)) {
    if (!f.empty()) out.push_back(f);
  }
  return out;
}

inline double to_double(const std::string& key, const std::string& v) {
  if (auto d = csv::parse_double(v)) return *d;
  throw ConfigError(key + ": expected a number, got '" + v + "'");
}

inline long long to_int(const std::string& key, const std::string& v) {
  if (auto i = csv::parse_int(v)) return *i;
  throw ConfigError(key + ": expected an integer, got '" + v + "'");
}

inline StudentTNoise& student_t(RunConfig& c) {
  if (!std::holds_alternative<StudentTNoise>(c.noise_model)) c.noise_model = StudentTNoise{};
  return std::get<StudentTNoise>(c.noise_model);
}

}  // namespace detail

// Applies one setting. `base` anchors relative paths.
inline void set_option(RunConfig& c, const std::string& key, const std::string& value,
                       const fs::path& base = {}) {
  const auto path = [&] {
    fs::path p(value);
    return p.is_relative() && !base.empty() ? base / p : p;
  };
  const auto positive = [&](long long v) {
    if (v < 1) throw ConfigError(key + " must be at least 1");
    return v;
  };
  if (key == "election_date") {
    c.election_date = csv::parse_date(value);
    if (!c.election_date) throw ConfigError("election_date must be YYYY-MM-DD");
  } else if (key == "paths") {
    c.paths = static_cast<std::size_t>(positive(detail::to_int(key, value)));
  } else if (key == "seed") {
    const auto s = detail::to_int(key, value);
    if (s < 0) throw ConfigError("seed must be nonnegative");
    c.seed = static_cast<std::uint64_t>(s);
  } else if (key == "bandwidth") {
    c.bandwidth = detail::to_double(key, value);
    if (!(c.bandwidth > 0)) throw ConfigError("bandwidth must be positive");
  } else if (key == "noise_model") {
    if (value == "gaussian") {
      c.noise_model = GaussianNoise{};
    } else if (value == "student_t") {
      detail::student_t(c);
    } else {
      throw ConfigError("noise_model must be gaussian or student_t");
    }
  } else if (key == "sigma_alpha") {
    detail::student_t(c).sigma_alpha = detail::to_double(key, value);
  } else if (key == "sigma_beta") {
    detail::student_t(c).sigma_beta = detail::to_double(key, value);
  } else if (key == "nu") {
    detail::student_t(c).nu = static_cast<int>(positive(detail::to_int(key, value)));
  } else if (key == "win_threshold") {
    c.win_threshold = detail::to_double(key, value);
  } else if (key == "min_polls") {
    c.min_polls = static_cast<std::size_t>(positive(detail::to_int(key, value)));
  } else if (key == "sigma_samp") {
    c.sigma_samp = detail::to_double(key, value);
  } else if (key == "threads") {
    c.threads = static_cast<unsigned>(positive(detail::to_int(key, value)));
  } else if (key == "ts_step") {
    c.ts_step = static_cast<int>(positive(detail::to_int(key, value)));
  } else if (key == "polls") {
    c.polls = path();
  } else if (key == "historical") {
    c.historical = path();
  } else if (key == "ev_table") {
    c.ev_table = path();
  } else if (key == "calibration") {
    c.calibration = path();
  } else if (key == "experts") {
    c.experts = path();
  } else if (key == "reference") {
    c.reference = path();
  } else if (key == "forecasts") {
    c.forecasts = path();
  } else if (key == "realizations") {
    c.realizations = path();
  } else if (key == "histograms") {
    c.histograms = path();
  } else if (key == "out_dir") {
    c.out_dir = path();
  } else if (key == "metrics") {
    c.metrics = detail::split_list(value);
  } else if (key == "loss") {
    if (value == "quadratic") {
      c.loss = LossMode::Quadratic;
    } else if (value == "trading") {
      c.loss = LossMode::Trading;
    } else {
      throw ConfigError("loss must be quadratic or trading");
    }
  } else if (key == "reference_mode") {
    if (value == "market") {
      c.reference_mode = ReferenceMode::Market;
    } else if (value == "pairmean") {
      c.reference_mode = ReferenceMode::PairMean;
    } else {
      throw ConfigError("reference_mode must be market or pairmean");
    }
  } else if (key == "realization") {
    const auto r = detail::to_int(key, value);
    if (r != 0 && r != 1) throw ConfigError("realization must be 0 or 1");
    c.realization = static_cast<int>(r);
  } else if (key == "horizon") {
    c.horizon = static_cast<std::size_t>(positive(detail::to_int(key, value)));
  } else if (key == "curve_means") {
    c.curve_means.clear();
    for (const auto& v : detail::split_list(value)) c.curve_means.push_back(detail::to_double(key, v));
  } else if (key == "curve_sds") {
    c.curve_sds.clear();
    for (const auto& v : detail::split_list(value)) c.curve_sds.push_back(detail::to_double(key, v));
  } else {
    throw ConfigError("unknown config key '" + key + "'");
  }
}

inline void load_config(RunConfig& c, const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot open config " + file.string());
  const fs::path base = file.parent_path();
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (csv::blank(line)) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(file.string() + ":" + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key(csv::trim(std::string_view(line).substr(0, eq)));
    const std::string value(csv::trim(std::string_view(line).substr(eq + 1)));
    set_option(c, key, value, base);
  }
}

}  // namespace elecast::app
