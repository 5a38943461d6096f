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

// Exponentially weighted average forecaster over a panel of experts.
//
// Weights are w_i proportional to exp(-eta * L_i) with L_i the expert's
// cumulative loss and eta = sqrt(8 ln N / T). For per-round losses in [0,1]
// the mixture loss sum_t sum_i w_{t,i} l_{t,i} exceeds the best expert's by
// at most sqrt(T/2 ln N).

#pragma once

#include <algorithm>
#include <cmath>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "elecast/csv.hpp"
#include "elecast/error.hpp"
#include "elecast/scoring.hpp"
#include "elecast/trading.hpp"

namespace elecast {

struct ExpertPanel {
  std::vector<std::string> names;
  std::vector<Date> dates;                       // strictly increasing
  std::vector<std::vector<double>> predictions;  // [round][expert]

  std::size_t n_experts() const { return names.size(); }
  std::size_t n_rounds() const { return dates.size(); }

  BinaryForecastSeries series(std::size_t expert) const {
    BinaryForecastSeries s{names.at(expert), {}};
    for (std::size_t t = 0; t < dates.size(); ++t) {
      s.points.push_back({dates[t], predictions[t][expert]});
    }
    return s;
  }
};

// CSV: date, then one probability column per expert. Empty cells are an
// error; values are never imputed.
inline ExpertPanel load_panel(std::istream& in) {
  const auto header = csv::read_header(in);
  if (header.size() < 2 || header.front() != "date") {
    throw IngestError("expert panel header must be: date,<expert>...");
  }
  ExpertPanel panel;
  panel.names.assign(header.begin() + 1, header.end());
  std::vector<std::pair<Date, std::vector<double>>> rows;
  std::string line;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (csv::blank(line)) continue;
    const auto f = csv::split(line);
    const auto where = " on line " + std::to_string(line_no);
    if (f.size() != header.size()) throw IngestError("expert panel: wrong field count" + where);
    const auto d = csv::parse_date(f[0]);
    if (!d) throw IngestError("expert panel: bad date" + where);
    std::vector<double> preds;
    for (std::size_t i = 1; i < f.size(); ++i) {
      const auto p = csv::parse_double(f[i]);
      if (!p) throw IngestError("expert panel: missing value for " + header[i] + where);
      if (*p < 0.0 || *p > 1.0) throw IngestError("expert panel: probability outside [0,1]" + where);
      preds.push_back(*p);
    }
    rows.emplace_back(*d, std::move(preds));
  }
  std::sort(rows.begin(), rows.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (k > 0 && rows[k].first == rows[k - 1].first) {
      throw IngestError("expert panel: duplicate date " + csv::format_date(rows[k].first));
    }
    panel.dates.push_back(rows[k].first);
    panel.predictions.push_back(std::move(rows[k].second));
  }
  return panel;
}

struct LearnerState {
  std::vector<double> weights;
  std::vector<double> cumulative_losses;
  double eta = 0.0;
  std::size_t round = 0;
};

inline double learning_rate(std::size_t n_experts, std::size_t horizon) {
  return std::sqrt(8.0 * std::log(static_cast<double>(n_experts)) /
                   static_cast<double>(horizon));
}

inline double regret_bound(std::size_t n_experts, std::size_t horizon) {
  return std::sqrt(static_cast<double>(horizon) / 2.0 *
                   std::log(static_cast<double>(n_experts)));
}

// A single expert gets eta = 0 and simply passes through.
inline LearnerState init(std::size_t n_experts, std::size_t horizon) {
  if (n_experts == 0) throw ConfigError("need at least one expert");
  if (horizon == 0) throw ConfigError("horizon must be at least 1");
  LearnerState s;
  s.weights.assign(n_experts, 1.0 / static_cast<double>(n_experts));
  s.cumulative_losses.assign(n_experts, 0.0);
  s.eta = learning_rate(n_experts, horizon);
  return s;
}

inline double predict(const LearnerState& state, std::span<const double> expert_predictions) {
  if (expert_predictions.size() != state.weights.size()) {
    throw ConfigError("expected " + std::to_string(state.weights.size()) +
                      " expert predictions, got " + std::to_string(expert_predictions.size()));
  }
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < state.weights.size(); ++i) {
    num += state.weights[i] * expert_predictions[i];
    den += state.weights[i];
  }
  return num / den;
}

// Recomputes weights from cumulative losses; shifting by the minimum loss
// keeps the exponentials in range.
inline LearnerState update(LearnerState state, std::span<const double> per_round_losses) {
  const std::size_t n = state.weights.size();
  if (per_round_losses.size() != n) throw ConfigError("loss vector has wrong dimension");
  for (double l : per_round_losses) {
    if (!std::isfinite(l)) throw InputError("non-finite loss; clamp before updating");
  }
  for (std::size_t i = 0; i < n; ++i) state.cumulative_losses[i] += per_round_losses[i];
  const double lmin = *std::min_element(state.cumulative_losses.begin(),
                                        state.cumulative_losses.end());
  double z = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    state.weights[i] = std::exp(-state.eta * (state.cumulative_losses[i] - lmin));
    z += state.weights[i];
  }
  for (double& w : state.weights) w /= z;
  ++state.round;
  return state;
}

struct OnlineRun {
  std::vector<double> aggregate;  // prediction issued before each round's loss
  LearnerState state;
  double learner_loss = 0.0;      // sum_t sum_i w_{t,i} l_{t,i}
  double best_expert_loss = 0.0;
  double regret = 0.0;
};

// losses[t][i] is expert i's loss in round t. Rounds beyond losses.size()
// (panel dates with no loss yet) still receive a prediction.
inline OnlineRun run(const ExpertPanel& panel, std::span<const std::vector<double>> losses,
                     std::size_t horizon) {
  if (losses.size() > panel.n_rounds()) {
    throw ConfigError("more loss rounds (" + std::to_string(losses.size()) +
                      ") than panel dates (" + std::to_string(panel.n_rounds()) + ")");
  }
  OnlineRun out;
  out.state = init(panel.n_experts(), horizon);
  for (std::size_t t = 0; t < panel.n_rounds(); ++t) {
    out.aggregate.push_back(predict(out.state, panel.predictions[t]));
    if (t >= losses.size()) continue;
    if (losses[t].size() != panel.n_experts()) {
      throw ConfigError("round " + std::to_string(t) + " has the wrong number of losses");
    }
    for (std::size_t i = 0; i < panel.n_experts(); ++i) {
      out.learner_loss += out.state.weights[i] * losses[t][i];
    }
    out.state = update(std::move(out.state), losses[t]);
  }
  out.best_expert_loss = losses.empty() ? 0.0
                                        : *std::min_element(out.state.cumulative_losses.begin(),
                                                            out.state.cumulative_losses.end());
  out.regret = out.learner_loss - out.best_expert_loss;
  return out;
}

// Reference prices on every panel date; AlignmentError lists the gaps.
inline std::vector<double> align_reference(const ExpertPanel& panel, const ReferenceSeries& ref) {
  std::vector<double> s;
  std::string missing;
  for (Date d : panel.dates) {
    if (const auto p = ref.price_at(d)) {
      s.push_back(*p);
    } else {
      missing += (missing.empty() ? "" : ", ") + csv::format_date(d);
    }
  }
  if (!missing.empty()) throw AlignmentError("reference has no price on: " + missing);
  return s;
}

namespace detail {

// Next-round prices: the reference on the following date, then the
// realization (if any) after the last date.
inline std::vector<double> next_prices(const std::vector<double>& s,
                                       std::optional<Realization> omega) {
  std::vector<double> next(s.begin() + (s.empty() ? 0 : 1), s.end());
  if (omega) next.push_back(omega->value());
  return next;
}

}  // namespace detail

// (y_{t,i} - s_{t+1})^2.
inline std::vector<std::vector<double>> quadratic_losses(const ExpertPanel& panel,
                                                         const ReferenceSeries& ref,
                                                         std::optional<Realization> omega) {
  const auto s = align_reference(panel, ref);
  const auto next = detail::next_prices(s, omega);
  std::vector<std::vector<double>> losses;
  for (std::size_t t = 0; t < next.size(); ++t) {
    std::vector<double> row;
    for (double y : panel.predictions[t]) row.push_back((y - next[t]) * (y - next[t]));
    losses.push_back(std::move(row));
  }
  return losses;
}

// Negative one-day P&L of holding (y - s_t) from s_t to s_{t+1}, mapped from
// [-1, 1] onto [0, 1] by l = (1 - pnl) / 2.
inline std::vector<std::vector<double>> trading_losses(const ExpertPanel& panel,
                                                       const ReferenceSeries& ref,
                                                       std::optional<Realization> omega) {
  const auto s = align_reference(panel, ref);
  const auto next = detail::next_prices(s, omega);
  std::vector<std::vector<double>> losses;
  for (std::size_t t = 0; t < next.size(); ++t) {
    std::vector<double> row;
    for (double y : panel.predictions[t]) {
      const double pnl = (y - s[t]) * (next[t] - s[t]);
      row.push_back((1.0 - pnl) / 2.0);
    }
    losses.push_back(std::move(row));
  }
  return losses;
}

}  // namespace elecast
