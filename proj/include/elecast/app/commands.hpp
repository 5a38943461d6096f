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

// The subcommands behind the elecast CLI. Each reads its inputs from the
// RunConfig, writes fixed-name files under out_dir, and reports progress
// and warnings to `log`. Failures are thrown as StageError naming the stage.

#pragma once

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "elecast/app/config.hpp"
#include "elecast/calibration.hpp"
#include "elecast/data_ingest.hpp"
#include "elecast/online.hpp"
#include "elecast/scoring.hpp"
#include "elecast/simulation.hpp"
#include "elecast/trading.hpp"
#include "json.hpp"

namespace elecast::app {

// Bad command-line usage (unknown metric, missing required input).
class UsageError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class StageError : public Error {
 public:
  StageError(std::string stage, const std::string& what, bool usage)
      : Error(stage + ": " + what), stage_(std::move(stage)), usage_(usage) {}
  const std::string& stage() const { return stage_; }
  bool usage() const { return usage_; }

 private:
  std::string stage_;
  bool usage_;
};

namespace detail {

template <class F>
auto stage(const std::string& name, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const StageError&) {
    throw;
  } catch (const ConfigError& e) {
    throw StageError(name, e.what(), true);
  } catch (const Error& e) {
    throw StageError(name, e.what(), false);
  } catch (const std::filesystem::filesystem_error& e) {
    throw StageError(name, e.what(), false);
  }
}

inline std::ifstream open_input(const fs::path& p, const std::string& what) {
  if (p.empty()) throw UsageError(what + " file not configured");
  std::ifstream in(p);
  if (!in) throw IngestError("cannot open " + what + " file " + p.string());
  return in;
}

inline void write_file(const fs::path& p, const std::string& content) {
  fs::create_directories(p.parent_path().empty() ? fs::path(".") : p.parent_path());
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << content;
  out.close();
  if (!out) throw Error("failed to write " + p.string());
}

// Shortest-exact text for a double; infinities as inf / -inf.
inline std::string num(double v) {
  if (std::isinf(v)) return v < 0 ? "-inf" : "inf";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::string file_safe(const std::string& name) {
  std::string out;
  for (char c : name) {
    out.push_back(std::isalnum(static_cast<unsigned char>(c)) || c == '-' ? c : '_');
  }
  return out.empty() ? "unnamed" : out;
}

}  // namespace detail

// --- calibration pipeline --------------------------------------------------

struct CalibrationOutcome {
  CalibrationSet set;
  std::vector<std::string> historical_states;  // states that used the fallback
};

// Calibrates every EV-table state from polls dated at least `as_of` days
// before the election (all polls when as_of is empty). States with fewer
// than min_polls polls, or a degenerate design, use historical results.
inline CalibrationOutcome calibrate_all(std::span<const SpreadObservation> obs,
                                        std::span<const HistoricalResult> historical,
                                        const EvTable& ev, const RunConfig& cfg,
                                        std::optional<double> as_of = std::nullopt) {
  std::vector<SpreadObservation> national;
  std::map<std::string, std::vector<SpreadObservation>> by_state;
  for (const auto& o : obs) {
    if (as_of && o.t < *as_of) continue;
    if (o.state == kNational) {
      national.push_back(o);
    } else {
      by_state[o.state].push_back(o);
    }
  }
  if (national.empty()) throw InsufficientDataError("no national polls", 0);
  double t_lo = national.front().t, t_hi = national.front().t;
  for (const auto& o : national) {
    t_lo = std::min(t_lo, o.t);
    t_hi = std::max(t_hi, o.t);
  }
  const auto series = smooth_national(national, cfg.bandwidth,
                                      daily_grid(as_of.value_or(t_lo), t_hi));

  CalibrationOutcome out;
  for (const auto& [code, _] : ev.entries()) {
    const auto& state_obs = by_state[code];
    if (state_obs.size() >= cfg.min_polls) {
      try {
        out.set.states.push_back(calibrate_state(state_obs, series, cfg.min_polls));
        continue;
      } catch (const InsufficientDataError&) {
      } catch (const DegenerateDesignError&) {
      }
    }
    try {
      out.set.states.push_back(calibrate_from_historical(code, historical));
      out.historical_states.push_back(code);
    } catch (const Error& e) {
      throw InsufficientDataError("state " + code + " has " + std::to_string(state_obs.size()) +
                                      " polls and no usable historical data (" + e.what() + ")",
                                  state_obs.size());
    }
  }
  out.set.market = calibrate_market(series, national);
  if (cfg.sigma_samp) out.set.market.sigma_samp = *cfg.sigma_samp;
  return out;
}

namespace detail {

struct LoadedPolls {
  std::vector<SpreadObservation> spreads;
  std::vector<HistoricalResult> historical;
};

inline LoadedPolls load_poll_inputs(const RunConfig& cfg, std::ostream& log) {
  LoadedPolls in;
  stage("reading polls", [&] {
    if (!cfg.election_date) throw UsageError("election_date is required");
    auto f = open_input(cfg.polls, "polls");
    const auto parsed = parse_polls(f, *cfg.election_date);
    for (const auto& issue : parsed.issues) {
      log << "polls line " << issue.line << ": " << issue.message << " (skipped)\n";
    }
    in.spreads = to_spreads(parsed.records);
  });
  if (!cfg.historical.empty()) {
    stage("reading historical results", [&] {
      auto f = open_input(cfg.historical, "historical");
      const auto parsed = load_historical(f);
      for (const auto& issue : parsed.issues) {
        log << "historical line " << issue.line << ": " << issue.message << '\n';
      }
      in.historical = parsed.rows;
    });
  }
  return in;
}

inline EvTable load_ev(const RunConfig& cfg) {
  return stage("reading EV table", [&] {
    auto f = open_input(cfg.ev_table, "EV table");
    return EvTable::load(f);
  });
}

}  // namespace detail

// --- calibrate --------------------------------------------------------------

inline int cmd_calibrate(const RunConfig& cfg, std::ostream& log) {
  const auto ev = detail::load_ev(cfg);
  const auto in = detail::load_poll_inputs(cfg, log);
  const auto out = detail::stage("calibration", [&] {
    return calibrate_all(in.spreads, in.historical, ev, cfg);
  });
  for (const auto& s : out.historical_states) log << s << ": calibrated from historical results\n";
  detail::stage("writing calibration.json", [&] {
    detail::write_file(cfg.out_dir / "calibration.json",
                       calibration_to_json(out.set.states, out.set.market).dump(2) + "\n");
  });
  return 0;
}

// --- forecast ---------------------------------------------------------------

inline int cmd_forecast(const RunConfig& cfg, std::ostream& log) {
  const auto sim = detail::stage("configuration", [&] { return cfg.simulation(); });
  const auto ev = detail::load_ev(cfg);

  CalibrationSet cal;
  detail::LoadedPolls in;
  const bool frozen = !cfg.calibration.empty();
  if (frozen) {
    cal = detail::stage("reading calibration", [&] {
      auto f = detail::open_input(cfg.calibration, "calibration");
      try {
        return calibration_from_json(nlohmann::json::parse(f));
      } catch (const nlohmann::json::exception& e) {
        throw IngestError(e.what());
      }
    });
  } else {
    in = detail::load_poll_inputs(cfg, log);
    const auto out = detail::stage("calibration", [&] {
      return calibrate_all(in.spreads, in.historical, ev, cfg);
    });
    for (const auto& s : out.historical_states) log << s << ": calibrated from historical results\n";
    cal = out.set;
  }

  const auto forecast = detail::stage("simulation", [&] {
    return run_forecast(cal.states, cal.market, ev, sim);
  });
  auto j = to_json(forecast);
  j["noise_model"] = to_json(sim.noise_model);
  j["win_threshold"] = sim.win_threshold;
  j["horizon"] = cal.market.horizon;
  detail::stage("writing forecast.json", [&] {
    detail::write_file(cfg.out_dir / "forecast.json", j.dump(2) + "\n");
  });

  // Probability time series: each day uses only the polls published by then.
  std::vector<ProbabilityPoint> ts;
  detail::stage("probability time series", [&] {
    if (frozen) {
      ts.push_back({cal.market.horizon, forecast.p_national, forecast.p_state});
      return;
    }
    double t_lo = 0.0, t_hi = 0.0;
    bool any = false;
    for (const auto& o : in.spreads) {
      if (o.state != kNational) continue;
      t_lo = any ? std::min(t_lo, o.t) : o.t;
      t_hi = any ? std::max(t_hi, o.t) : o.t;
      any = true;
    }
    std::vector<double> days;
    for (double d = t_hi; d > t_lo; d -= cfg.ts_step) days.push_back(d);
    days.push_back(t_lo);
    std::size_t skipped = 0;
    for (double d : days) {
      CalibrationOutcome day_cal;
      try {
        day_cal = calibrate_all(in.spreads, in.historical, ev, cfg, d);
      } catch (const Error&) {
        ++skipped;
        continue;
      }
      const auto f = run_forecast(day_cal.set.states, day_cal.set.market, ev, sim);
      ts.push_back({d, f.p_national, f.p_state});
    }
    if (skipped > 0) log << "time series: " << skipped << " early days lacked enough data\n";
  });

  detail::stage("writing timeseries.csv", [&] {
    std::ostringstream out;
    out << "days_to_election,date,p_national";
    for (const auto& s : forecast.states) out << ',' << s;
    out << '\n';
    for (const auto& p : ts) {
      out << detail::num(p.day) << ',';
      if (cfg.election_date) {
        out << csv::format_date(*cfg.election_date -
                                std::chrono::days{static_cast<long>(std::lround(p.day))});
      }
      out << ',' << detail::num(p.p_national);
      for (double v : p.p_state) out << ',' << detail::num(v);
      out << '\n';
    }
    detail::write_file(cfg.out_dir / "timeseries.csv", out.str());
  });
  log << "p_national = " << forecast.p_national << " over " << forecast.n_paths << " paths\n";
  return 0;
}

// --- score ------------------------------------------------------------------

namespace detail {

struct ScoreInputs {
  // forecaster -> event -> series
  std::map<std::string, std::map<std::string, BinaryForecastSeries>> binary;
  std::map<std::string, HistogramForecast> histograms;
  std::map<std::string, int> outcomes;  // event -> 0/1
  std::optional<int> realized_ev;
};

inline ScoreInputs load_score_inputs(const RunConfig& cfg) {
  ScoreInputs in;
  {
    auto f = open_input(cfg.forecasts, "forecasts");
    const csv::Header h(csv::read_header(f));
    const auto cf = h.require("forecaster"), ce = h.require("event"), cd = h.require("date"),
               cp = h.require("p");
    std::string line;
    while (std::getline(f, line)) {
      if (csv::blank(line)) continue;
      const auto r = csv::split(line);
      const bool wide = r.size() > std::max({cf, ce, cd, cp});
      const auto d = wide ? csv::parse_date(r[cd]) : std::nullopt;
      const auto p = wide ? csv::parse_double(r[cp]) : std::nullopt;
      if (!d || !p) throw IngestError("forecasts: malformed row '" + line + "'");
      auto& s = in.binary[r[cf]][r[ce]];
      s.forecaster = r[cf];
      s.points.push_back({*d, *p});
    }
    for (auto& [_, events] : in.binary) {
      for (auto& [event, s] : events) {
        std::sort(s.points.begin(), s.points.end(),
                  [](const auto& a, const auto& b) { return a.t < b.t; });
        for (std::size_t k = 1; k < s.points.size(); ++k) {
          if (s.points[k].t == s.points[k - 1].t) {
            throw IngestError("forecasts: duplicate date for " + s.forecaster + "/" + event);
          }
        }
      }
    }
  }
  {
    auto f = open_input(cfg.realizations, "realizations");
    const csv::Header h(csv::read_header(f));
    const auto ce = h.require("event"), co = h.require("outcome");
    std::string line;
    while (std::getline(f, line)) {
      if (csv::blank(line)) continue;
      const auto r = csv::split(line);
      const auto v = r.size() > std::max(ce, co) ? csv::parse_int(r[co]) : std::nullopt;
      if (!v) throw IngestError("realizations: malformed row '" + line + "'");
      if (r[ce] == "EV") {
        if (*v < 0 || *v > kTotalElectoralVotes) throw IngestError("realized EV out of range");
        in.realized_ev = static_cast<int>(*v);
      } else {
        if (*v != 0 && *v != 1) throw IngestError("binary outcome must be 0 or 1");
        in.outcomes[r[ce]] = static_cast<int>(*v);
      }
    }
  }
  if (!cfg.histograms.empty()) {
    auto f = open_input(cfg.histograms, "histograms");
    const csv::Header h(csv::read_header(f));
    const auto cf = h.require("forecaster"), ce = h.require("ev"), cp = h.require("p");
    std::string line;
    while (std::getline(f, line)) {
      if (csv::blank(line)) continue;
      const auto r = csv::split(line);
      const bool wide = r.size() > std::max({cf, ce, cp});
      const auto k = wide ? csv::parse_int(r[ce]) : std::nullopt;
      const auto p = wide ? csv::parse_double(r[cp]) : std::nullopt;
      if (!k || !p || *k < 0 || *k > kTotalElectoralVotes) {
        throw IngestError("histograms: malformed row '" + line + "'");
      }
      auto& hist = in.histograms[r[cf]];
      if (hist.bins.empty()) hist.bins.assign(kHistogramBins, 0.0);
      hist.bins[static_cast<std::size_t>(*k)] += *p;
    }
  }
  return in;
}

}  // namespace detail

inline int cmd_score(const RunConfig& cfg, std::ostream& log) {
  std::vector<Metric> metrics;
  detail::stage("configuration", [&] {
    for (const auto& name : cfg.metrics) {
      const auto m = parse_metric(name);
      if (!m) throw UsageError("unknown metric '" + name + "'");
      metrics.push_back(*m);
    }
  });
  const auto in = detail::stage("reading score inputs", [&] { return detail::load_score_inputs(cfg); });
  std::optional<EvTable> ev;
  if (!cfg.ev_table.empty()) ev = detail::load_ev(cfg);

  std::vector<ScoreReport> reports;
  detail::stage("scoring", [&] {
    for (Metric m : metrics) {
      if (is_density_metric(m)) {
        if (!in.realized_ev) {
          log << to_string(m) << ": no realized EV in realizations; skipped\n";
          continue;
        }
        for (const auto& [name, h] : in.histograms) {
          const double v = score_histogram(m, h, Realization::density(*in.realized_ev));
          reports.push_back({name, m, v, Weighting::Overall});
        }
        continue;
      }
      const auto score = [&](const BinaryForecastSeries& s, int omega) {
        const auto r = Realization::binary(omega);
        return m == Metric::Brier ? brier(s, r) : log_likelihood(s, r).value;
      };
      for (const auto& [name, events] : in.binary) {
        std::vector<EventScore> state_scores;
        for (const auto& [event, series] : events) {
          const auto o = in.outcomes.find(event);
          if (o == in.outcomes.end()) continue;
          if (event == kNational) {
            reports.push_back({name, m, score(series, o->second), Weighting::Overall});
          } else if (is_state_code(event)) {
            state_scores.push_back({event, score(series, o->second)});
          }
        }
        if (state_scores.empty()) continue;
        reports.push_back(aggregate_scores(name, m, state_scores, Weighting::StateAverage));
        if (ev) {
          reports.push_back(aggregate_scores(name, m, state_scores, Weighting::EvWeighted, &*ev));
        }
      }
    }
  });

  detail::stage("writing score tables", [&] {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : reports) rows.push_back(to_json(r));
    detail::write_file(cfg.out_dir / "scores.json", rows.dump(2) + "\n");
    for (Metric m : metrics) {
      std::vector<Weighting> ws = {Weighting::Overall};
      if (!is_density_metric(m)) {
        ws.push_back(Weighting::StateAverage);
        if (ev) ws.push_back(Weighting::EvWeighted);
      }
      for (Weighting w : ws) {
        std::ostringstream out;
        out << "forecaster,value\n";
        for (const auto& r : reports) {
          if (r.metric == m && r.weighting == w) out << r.forecaster << ',' << detail::num(r.value) << '\n';
        }
        detail::write_file(cfg.out_dir / ("score_" + std::string(to_string(m)) + "_" +
                                          std::string(to_string(w)) + ".csv"),
                           out.str());
      }
    }
  });
  return 0;
}

// --- trade / aggregate --------------------------------------------------------

namespace detail {

struct PanelInputs {
  ExpertPanel panel;
  ReferenceSeries ref;
  std::optional<Realization> omega;
};

inline PanelInputs load_panel_inputs(const RunConfig& cfg) {
  PanelInputs in;
  stage("reading expert panel", [&] {
    auto f = open_input(cfg.experts, "experts");
    in.panel = load_panel(f);
    if (in.panel.n_rounds() == 0) throw IngestError("expert panel has no rows");
  });
  stage("reading reference", [&] {
    if (cfg.reference_mode == ReferenceMode::PairMean) {
      std::vector<BinaryForecastSeries> all;
      for (std::size_t i = 0; i < in.panel.n_experts(); ++i) all.push_back(in.panel.series(i));
      in.ref = mean_reference(all);
    } else {
      auto f = open_input(cfg.reference, "reference");
      in.ref = load_reference(f);
    }
  });
  stage("aligning dates", [&] { align_reference(in.panel, in.ref); });
  if (cfg.realization) in.omega = Realization::binary(*cfg.realization);
  return in;
}

inline std::vector<std::vector<double>> panel_losses(const RunConfig& cfg, const PanelInputs& in) {
  return cfg.loss == LossMode::Quadratic ? quadratic_losses(in.panel, in.ref, in.omega)
                                         : trading_losses(in.panel, in.ref, in.omega);
}

inline OnlineRun run_learner(const RunConfig& cfg, const PanelInputs& in,
                             const std::vector<std::vector<double>>& losses, std::ostream& log) {
  const std::size_t rounds = losses.size();
  if (cfg.horizon && *cfg.horizon != rounds) {
    log << "warning: horizon " << *cfg.horizon << " differs from the " << rounds
        << " rounds available; eta uses " << rounds << '\n';
  }
  if (rounds == 0) log << "warning: no scored rounds; aggregate is the plain expert mean\n";
  return run(in.panel, losses, std::max<std::size_t>(rounds, 1));
}

inline std::string loss_name(LossMode m) { return m == LossMode::Quadratic ? "quadratic" : "trading"; }

}  // namespace detail

inline int cmd_trade(const RunConfig& cfg, std::ostream& log) {
  const auto in = detail::load_panel_inputs(cfg);
  const auto losses = detail::stage("loss computation", [&] { return detail::panel_losses(cfg, in); });
  const auto learner = detail::stage("online aggregation", [&] {
    return detail::run_learner(cfg, in, losses, log);
  });

  std::vector<BinaryForecastSeries> traders;
  for (std::size_t i = 0; i < in.panel.n_experts(); ++i) traders.push_back(in.panel.series(i));
  BinaryForecastSeries online{"online_" + detail::loss_name(cfg.loss), {}};
  for (std::size_t t = 0; t < in.panel.n_rounds(); ++t) {
    online.points.push_back({in.panel.dates[t], learner.aggregate[t]});
  }
  traders.push_back(std::move(online));

  detail::stage("trading", [&] {
    std::ostringstream summary;
    summary << "forecaster,marked_total,settlement,settled_total\n";
    for (const auto& s : traders) {
      const auto r = trade(s, in.ref, in.omega);
      const auto stem = "pnl_" + detail::file_safe(s.forecaster);
      std::ostringstream settled, nolast;
      write_pnl_csv(settled, r.settled);
      write_pnl_csv(nolast, r.unsettled);
      detail::write_file(cfg.out_dir / (stem + ".csv"), settled.str());
      detail::write_file(cfg.out_dir / (stem + "_nolast.csv"), nolast.str());
      summary << s.forecaster << ',' << detail::num(r.settled.marked_total()) << ','
              << detail::num(r.settled.settlement) << ',' << detail::num(r.settled.total()) << '\n';
    }
    detail::write_file(cfg.out_dir / "trade_summary.csv", summary.str());
  });
  return 0;
}

inline int cmd_aggregate(const RunConfig& cfg, std::ostream& log) {
  const auto in = detail::load_panel_inputs(cfg);
  const auto losses = detail::stage("loss computation", [&] { return detail::panel_losses(cfg, in); });
  const auto result = detail::stage("online aggregation", [&] {
    return detail::run_learner(cfg, in, losses, log);
  });
  const std::size_t rounds = losses.size();
  const auto s = align_reference(in.panel, in.ref);
  const auto next = elecast::detail::next_prices(s, in.omega);

  detail::stage("writing aggregate outputs", [&] {
    std::ostringstream csv_out;
    csv_out << "date,prediction,reference\n";
    for (std::size_t t = 0; t < in.panel.n_rounds(); ++t) {
      csv_out << csv::format_date(in.panel.dates[t]) << ',' << detail::num(result.aggregate[t])
              << ',' << detail::num(s[t]) << '\n';
    }
    detail::write_file(cfg.out_dir / "aggregate.csv", csv_out.str());

    nlohmann::json j;
    j["loss"] = detail::loss_name(cfg.loss);
    j["rounds"] = rounds;
    j["eta"] = result.state.eta;
    j["learner_loss"] = result.learner_loss;
    j["best_expert_loss"] = result.best_expert_loss;
    j["regret"] = result.regret;
    j["regret_bound"] = regret_bound(in.panel.n_experts(), std::max<std::size_t>(rounds, 1));
    nlohmann::json weights = nlohmann::json::object(), cum = nlohmann::json::object(),
                   expert_mse = nlohmann::json::object();
    for (std::size_t i = 0; i < in.panel.n_experts(); ++i) {
      weights[in.panel.names[i]] = result.state.weights[i];
      cum[in.panel.names[i]] = result.state.cumulative_losses[i];
      if (rounds > 0) {
        double e = 0.0;
        for (std::size_t t = 0; t < rounds; ++t) {
          const double d = in.panel.predictions[t][i] - next[t];
          e += d * d;
        }
        expert_mse[in.panel.names[i]] = e / static_cast<double>(rounds);
      }
    }
    j["final_weights"] = weights;
    j["cumulative_losses"] = cum;
    if (rounds > 0) {
      double e = 0.0;
      for (std::size_t t = 0; t < rounds; ++t) {
        const double d = result.aggregate[t] - next[t];
        e += d * d;
      }
      j["mse_vs_reference"] = e / static_cast<double>(rounds);
      j["expert_mse_vs_reference"] = expert_mse;
    }
    detail::write_file(cfg.out_dir / "aggregate_summary.json", j.dump(2) + "\n");
  });
  log << "regret " << result.regret << " (bound "
      << regret_bound(in.panel.n_experts(), std::max<std::size_t>(rounds, 1)) << ")\n";
  return 0;
}

// --- curves -----------------------------------------------------------------

inline int cmd_curves(const RunConfig& cfg, std::ostream&) {
  std::vector<HistogramForecast> densities;
  std::vector<std::string> labels;
  detail::stage("building densities", [&] {
    for (double mu : cfg.curve_means) {
      for (double sd : cfg.curve_sds) {
        densities.push_back(discretized_gaussian(mu, sd));
        labels.push_back("mu" + detail::num(mu) + "_sd" + detail::num(sd));
      }
    }
  });
  std::vector<int> grid(kHistogramBins);
  for (int k = 0; k < kHistogramBins; ++k) grid[k] = k;
  detail::stage("writing curves", [&] {
    for (Metric m : {Metric::Brier, Metric::LogLik, Metric::Selten, Metric::Spherical, Metric::CDF}) {
      const auto curve = score_curves(m, densities, grid);
      std::ostringstream out;
      out << "realization";
      for (const auto& l : labels) out << ',' << l;
      out << '\n';
      for (std::size_t r = 0; r < curve.realizations.size(); ++r) {
        out << curve.realizations[r];
        for (double v : curve.values[r]) out << ',' << detail::num(v);
        out << '\n';
      }
      detail::write_file(cfg.out_dir / ("curves_" + std::string(to_string(m)) + ".csv"), out.str());
    }
  });
  return 0;
}

}  // namespace elecast::app
