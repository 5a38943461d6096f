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

// Poll and historical-result ingestion, candidate spreads, and the
// Gaussian-kernel smoothed national spread.
//
// Time is measured in days to election: 0 is election day and larger values
// lie further in the past.

#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <istream>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "elecast/csv.hpp"
#include "elecast/error.hpp"
#include "elecast/states.hpp"

namespace elecast {

enum class SampleType { RegisteredVoters, LikelyVoters, All };

inline std::optional<SampleType> parse_sample_type(std::string_view s) {
  std::string k;
  for (char c : csv::trim(s)) {
    if (c != ' ' && c != '_') k.push_back(static_cast<char>(std::tolower(c)));
  }
  if (k == "rv" || k == "registeredvoters") return SampleType::RegisteredVoters;
  if (k == "lv" || k == "likelyvoters") return SampleType::LikelyVoters;
  if (k == "a" || k == "all" || k == "adults") return SampleType::All;
  return std::nullopt;
}

struct PollRecord {
  std::string pollster;
  std::string state;  // "US" or a state code
  Date date;
  double days_to_election = 0.0;
  long sample_size = 1;
  SampleType sample_type = SampleType::All;
  double pct_c1 = 0.0;
  double pct_c2 = 0.0;
  std::vector<std::pair<std::string, double>> pct_other;
};

struct SpreadObservation {
  std::string state;
  double t = 0.0;          // days to election
  double spread = 0.0;     // pct_c1 - pct_c2, percentage points
  long sample_size = 1;
  double share_c1 = 0.5;   // pct_c1 / (pct_c1 + pct_c2)
};

struct SmoothedSeries {
  std::vector<double> grid;    // ascending days to election
  std::vector<double> values;  // smoothed spread per grid point
  double bandwidth = 0.0;
  // Grid points where every kernel weight underflowed and the nearest
  // observation was used instead.
  std::vector<double> fallback_points;

  std::size_t nearest_index(double t) const {
    const auto it = std::lower_bound(grid.begin(), grid.end(), t);
    if (it == grid.begin()) return 0;
    if (it == grid.end()) return grid.size() - 1;
    const auto hi = static_cast<std::size_t>(it - grid.begin());
    // Ties go to the later-in-time (smaller days-to-election) point.
    return (t - grid[hi - 1] <= grid[hi] - t) ? hi - 1 : hi;
  }

  double nearest_value(double t) const { return values.at(nearest_index(t)); }
};

struct HistoricalResult {
  int year = 0;
  std::string state;
  double state_spread = 0.0;
  double national_spread = 0.0;
};

struct RowIssue {
  std::size_t line = 0;  // 1-based, header is line 1
  std::string message;
};

struct PollParseResult {
  std::vector<PollRecord> records;
  std::size_t skipped = 0;
  std::vector<RowIssue> issues;
};

struct HistoricalParseResult {
  std::vector<HistoricalResult> rows;
  std::size_t skipped = 0;
  std::vector<RowIssue> issues;  // skipped rows and kept-with-warning rows
};

// Reads poll CSV with columns pollster,state,date,sample_size,sample_type,
// pct_c1,pct_c2. Any further numeric columns are kept as pct_other. Rows
// with missing or invalid fields are skipped and reported.
inline PollParseResult parse_polls(std::istream& in, Date election_date) {
  const auto names = csv::read_header(in);
  const csv::Header header(names);
  const std::size_t c_pollster = header.require("pollster");
  const std::size_t c_state = header.require("state");
  const std::size_t c_date = header.require("date");
  const std::size_t c_n = header.require("sample_size");
  const std::size_t c_type = header.require("sample_type");
  const std::size_t c_c1 = header.require("pct_c1");
  const std::size_t c_c2 = header.require("pct_c2");
  std::vector<std::size_t> other_cols;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i != c_pollster && i != c_state && i != c_date && i != c_n &&
        i != c_type && i != c_c1 && i != c_c2) {
      other_cols.push_back(i);
    }
  }

  PollParseResult out;
  std::string line;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (csv::blank(line)) continue;
    const auto f = csv::split(line);
    const auto skip = [&](std::string msg) {
      ++out.skipped;
      out.issues.push_back({line_no, std::move(msg)});
    };
    if (f.size() < names.size()) {
      skip("expected " + std::to_string(names.size()) + " fields, got " +
           std::to_string(f.size()));
      continue;
    }
    PollRecord r;
    r.pollster = f[c_pollster];
    r.state = f[c_state];
    if (!is_region_code(r.state)) {
      skip("unknown state code '" + r.state + "'");
      continue;
    }
    const auto date = csv::parse_date(f[c_date]);
    const auto n = csv::parse_int(f[c_n]);
    const auto type = parse_sample_type(f[c_type]);
    const auto c1 = csv::parse_double(f[c_c1]);
    const auto c2 = csv::parse_double(f[c_c2]);
    if (r.pollster.empty() || !date || !n || !type || !c1 || !c2) {
      skip("missing or malformed required field");
      continue;
    }
    if (*n < 1) {
      skip("sample_size must be positive");
      continue;
    }
    if (*c1 < 0 || *c2 < 0 || *c1 + *c2 > 100.0 || *c1 + *c2 <= 0.0) {
      skip("candidate percentages out of range");
      continue;
    }
    const double days = static_cast<double>((election_date - *date).count());
    if (days < 0) {
      skip("poll dated after the election");
      continue;
    }
    r.date = *date;
    r.days_to_election = days;
    r.sample_size = static_cast<long>(*n);
    r.sample_type = *type;
    r.pct_c1 = *c1;
    r.pct_c2 = *c2;
    for (std::size_t c : other_cols) {
      if (auto v = csv::parse_double(f[c])) r.pct_other.emplace_back(names[c], *v);
    }
    out.records.push_back(std::move(r));
  }
  if (in.bad()) throw IngestError("read failure in poll stream");
  return out;
}

inline std::vector<SpreadObservation> to_spreads(std::span<const PollRecord> polls) {
  std::vector<SpreadObservation> out;
  out.reserve(polls.size());
  for (const auto& p : polls) {
    const double two_party = p.pct_c1 + p.pct_c2;
    out.push_back({p.state, p.days_to_election, p.pct_c1 - p.pct_c2,
                   p.sample_size, two_party > 0 ? p.pct_c1 / two_party : 0.5});
  }
  return out;
}

// Integer days from `from` to `to` inclusive, ascending.
inline std::vector<double> daily_grid(double from, double to) {
  std::vector<double> grid;
  const double lo = std::floor(std::min(from, to));
  const double hi = std::ceil(std::max(from, to));
  for (double d = lo; d <= hi; d += 1.0) grid.push_back(d);
  return grid;
}

// Nadaraya-Watson estimate with Gaussian kernel exp(-u^2/2), u = (t-t_k)/h.
// Every poll carries equal weight.
inline SmoothedSeries smooth_national(std::span<const SpreadObservation> obs,
                                      double bandwidth,
                                      std::vector<double> grid) {
  if (obs.empty()) throw InsufficientDataError("no national polls to smooth", 0);
  if (!(bandwidth > 0.0) || !std::isfinite(bandwidth)) {
    throw ConfigError("bandwidth must be positive");
  }
  for (const auto& o : obs) {
    if (o.state != kNational) {
      throw InputError("smooth_national given a non-national observation (" +
                       o.state + ")");
    }
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  SmoothedSeries s;
  s.bandwidth = bandwidth;
  s.values.reserve(grid.size());
  for (double t : grid) {
    double num = 0.0;
    double den = 0.0;
    for (const auto& o : obs) {
      const double u = (t - o.t) / bandwidth;
      const double w = std::exp(-0.5 * u * u);
      num += w * o.spread;
      den += w;
    }
    if (den > 0.0) {
      s.values.push_back(num / den);
      continue;
    }
    double best = std::numeric_limits<double>::infinity();
    double sum = 0.0;
    int ties = 0;
    for (const auto& o : obs) {
      const double d = std::abs(t - o.t);
      if (d < best) {
        best = d;
        sum = o.spread;
        ties = 1;
      } else if (d == best) {
        sum += o.spread;
        ++ties;
      }
    }
    s.values.push_back(sum / ties);
    s.fallback_points.push_back(t);
  }
  s.grid = std::move(grid);
  return s;
}

// Daily grid spanning the observations.
inline SmoothedSeries smooth_national(std::span<const SpreadObservation> obs,
                                      double bandwidth) {
  if (obs.empty()) throw InsufficientDataError("no national polls to smooth", 0);
  const auto [lo, hi] = std::minmax_element(
      obs.begin(), obs.end(),
      [](const auto& a, const auto& b) { return a.t < b.t; });
  return smooth_national(obs, bandwidth, daily_grid(lo->t, hi->t));
}

// Reads CSV with columns year,state,state_spread,national_spread.
inline HistoricalParseResult load_historical(std::istream& in) {
  const csv::Header header(csv::read_header(in));
  const std::size_t c_year = header.require("year");
  const std::size_t c_state = header.require("state");
  const std::size_t c_ss = header.require("state_spread");
  const std::size_t c_ns = header.require("national_spread");
  const std::size_t needed = std::max({c_year, c_state, c_ss, c_ns}) + 1;

  HistoricalParseResult out;
  std::string line;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (csv::blank(line)) continue;
    const auto f = csv::split(line);
    const auto year = f.size() >= needed ? csv::parse_int(f[c_year]) : std::nullopt;
    const auto ss = f.size() >= needed ? csv::parse_double(f[c_ss]) : std::nullopt;
    const auto ns = f.size() >= needed ? csv::parse_double(f[c_ns]) : std::nullopt;
    if (!year || !ss || !ns || !is_state_code(f[c_state])) {
      ++out.skipped;
      out.issues.push_back({line_no, "malformed historical row"});
      continue;
    }
    if (*year < 1976) {
      out.issues.push_back({line_no, "year " + std::to_string(*year) +
                                         " predates 1976; row kept"});
    }
    out.rows.push_back({static_cast<int>(*year), f[c_state], *ss, *ns});
  }
  if (in.bad()) throw IngestError("read failure in historical stream");
  return out;
}

}  // namespace elecast
