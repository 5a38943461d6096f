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

// Trading score. Each day a forecaster holds (forecast - reference) units of
// a contract paying 1 if the event happens, struck at the reference price.
// Yesterday's position is marked to today's reference, so the P&L is
// available every day before the outcome is known; at the end the last
// position settles at the realization.

#pragma once

#include <algorithm>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "elecast/csv.hpp"
#include "elecast/error.hpp"
#include "elecast/scoring.hpp"

namespace elecast {

struct ReferencePoint {
  Date t;
  double s = 0.0;
};

struct ReferenceSeries {
  enum class Kind { BettingMarket, PairMean };
  std::vector<ReferencePoint> points;  // strictly increasing t
  Kind kind = Kind::BettingMarket;

  std::optional<double> price_at(Date t) const {
    const auto it = std::lower_bound(points.begin(), points.end(), t,
                                     [](const ReferencePoint& p, Date d) { return p.t < d; });
    if (it == points.end() || it->t != t) return std::nullopt;
    return it->s;
  }
};

struct Position {
  Date t;
  double size = 0.0;   // forecast - reference
  double price = 0.0;  // reference at entry
};

struct PnLPoint {
  Date t;
  double increment = 0.0;
  double cumulative = 0.0;
};

struct PnLSeries {
  std::string forecaster;
  std::vector<PnLPoint> daily;  // first entry has increment 0
  bool settled = false;
  double settlement = 0.0;      // final increment, meaningful when settled

  double marked_total() const { return daily.empty() ? 0.0 : daily.back().cumulative; }
  double total() const { return marked_total() + (settled ? settlement : 0.0); }
};

// CSV with header date,price; rows sorted on read.
inline ReferenceSeries load_reference(std::istream& in) {
  const csv::Header header(csv::read_header(in));
  const std::size_t c_date = header.require("date");
  const std::size_t c_price = header.require("price");
  ReferenceSeries ref;
  std::string line;
  while (std::getline(in, line)) {
    if (csv::blank(line)) continue;
    const auto f = csv::split(line);
    const bool wide = f.size() > std::max(c_date, c_price);
    const auto d = wide ? csv::parse_date(f[c_date]) : std::nullopt;
    const auto p = wide ? csv::parse_double(f[c_price]) : std::nullopt;
    if (!d || !p || *p < 0.0 || *p > 1.0) {
      throw IngestError("reference: malformed row '" + line + "'");
    }
    ref.points.push_back({*d, *p});
  }
  std::sort(ref.points.begin(), ref.points.end(),
            [](const auto& a, const auto& b) { return a.t < b.t; });
  for (std::size_t k = 1; k < ref.points.size(); ++k) {
    if (ref.points[k].t == ref.points[k - 1].t) {
      throw IngestError("reference: duplicate date " + csv::format_date(ref.points[k].t));
    }
  }
  return ref;
}

// Mean of the forecasters on the dates they all share. With two forecasters
// this is the pair mean (a_t + b_t) / 2.
inline ReferenceSeries mean_reference(std::span<const BinaryForecastSeries> forecasters) {
  if (forecasters.empty()) throw AlignmentError("mean reference needs forecasters");
  std::map<Date, std::pair<double, std::size_t>> acc;
  for (const auto& f : forecasters) {
    for (const auto& p : f.points) {
      auto& [sum, count] = acc[p.t];
      sum += p.p;
      ++count;
    }
  }
  ReferenceSeries ref;
  ref.kind = ReferenceSeries::Kind::PairMean;
  for (const auto& [t, sc] : acc) {
    if (sc.second == forecasters.size()) {
      ref.points.push_back({t, sc.first / static_cast<double>(sc.second)});
    }
  }
  if (ref.points.empty()) throw AlignmentError("forecasters share no dates");
  return ref;
}

// position_t = a_t - s_t on the dates both series have.
inline std::vector<Position> positions(const BinaryForecastSeries& forecast,
                                       const ReferenceSeries& ref) {
  std::vector<Position> out;
  for (const auto& pt : forecast.points) {
    if (const auto s = ref.price_at(pt.t)) out.push_back({pt.t, pt.p - *s, *s});
  }
  if (out.empty()) {
    throw AlignmentError(forecast.forecaster + ": no dates in common with the reference");
  }
  return out;
}

// Increment at t_{k+1} = position_{t_k} * (s_{t_{k+1}} - s_{t_k}).
inline PnLSeries mark_to_market(std::span<const Position> pos, const ReferenceSeries& ref,
                                std::string forecaster = {}) {
  PnLSeries pnl;
  pnl.forecaster = std::move(forecaster);
  double cum = 0.0;
  for (std::size_t k = 0; k < pos.size(); ++k) {
    const auto s = ref.price_at(pos[k].t);
    if (!s) throw AlignmentError("no reference price on " + csv::format_date(pos[k].t));
    double inc = 0.0;
    if (k > 0) {
      const auto prev = ref.price_at(pos[k - 1].t);
      inc = pos[k - 1].size * (*s - *prev);
    }
    cum += inc;
    pnl.daily.push_back({pos[k].t, inc, cum});
  }
  return pnl;
}

// Settles the last position at omega, or at its own reference price (a zero
// increment) when no realization is given.
inline PnLSeries settle(PnLSeries pnl, const Position& last,
                        std::optional<Realization> omega = std::nullopt) {
  if (pnl.settled) throw StateError(pnl.forecaster + ": already settled");
  double final_price = last.price;
  if (omega) {
    if (omega->kind() != Realization::Kind::Binary) {
      throw InputError("trading settlement needs a binary realization");
    }
    final_price = omega->value();
  }
  pnl.settlement = last.size * (final_price - last.price);
  pnl.settled = true;
  return pnl;
}

struct TradeResult {
  std::vector<Position> positions;
  PnLSeries unsettled;
  PnLSeries settled;
};

inline TradeResult trade(const BinaryForecastSeries& forecast, const ReferenceSeries& ref,
                         std::optional<Realization> omega) {
  TradeResult r;
  r.positions = positions(forecast, ref);
  r.unsettled = mark_to_market(r.positions, ref, forecast.forecaster);
  r.settled = settle(r.unsettled, r.positions.back(), omega);
  return r;
}

// Settled total P&L; higher is better.
inline double trading_score(const BinaryForecastSeries& forecast, const ReferenceSeries& ref,
                            std::optional<Realization> omega) {
  return trade(forecast, ref, omega).settled.total();
}

// date,increment,cumulative; a settled series ends with a "settlement" row.
inline void write_pnl_csv(std::ostream& out, const PnLSeries& pnl) {
  out.precision(17);
  out << "date,increment,cumulative\n";
  for (const auto& p : pnl.daily) {
    out << csv::format_date(p.t) << ',' << p.increment << ',' << p.cumulative << '\n';
  }
  if (pnl.settled) out << "settlement," << pnl.settlement << ',' << pnl.total() << '\n';
}

}  // namespace elecast
