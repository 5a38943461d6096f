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

// Scoring rules for binary probability series and for histogram (density)
// reports over electoral votes.
//
// Orientation:
//   Brier, CDF              penalties, lower is better
//   LogLik, Selten, Spherical  rewards, higher is better

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "elecast/csv.hpp"
#include "elecast/error.hpp"
#include "elecast/simulation.hpp"
#include "json.hpp"

namespace elecast {

struct ForecastPoint {
  Date t;
  double p = 0.0;
};

struct BinaryForecastSeries {
  std::string forecaster;
  std::vector<ForecastPoint> points;  // strictly increasing t
};

// A binary event outcome (omega in {0,1}) or a realized bin of a density.
class Realization {
 public:
  enum class Kind { Binary, Density };

  static Realization binary(int omega) {
    if (omega != 0 && omega != 1) throw InputError("binary realization must be 0 or 1");
    return Realization(Kind::Binary, omega);
  }
  static Realization density(int bin) {
    if (bin < 0) throw InputError("realized bin must be nonnegative");
    return Realization(Kind::Density, bin);
  }

  Kind kind() const { return kind_; }
  int value() const { return value_; }

 private:
  Realization(Kind k, int v) : kind_(k), value_(v) {}
  Kind kind_;
  int value_;
};

struct HistogramForecast {
  std::vector<double> bins;
};

// Log score with a flag set when some term was log(0).
struct LogScore {
  double value = 0.0;
  bool hypersensitive = false;
};

enum class Metric { Brier, LogLik, Selten, Spherical, CDF };
enum class Weighting { Overall, StateAverage, EvWeighted };

inline std::string_view to_string(Metric m) {
  switch (m) {
    case Metric::Brier: return "brier";
    case Metric::LogLik: return "log";
    case Metric::Selten: return "selten";
    case Metric::Spherical: return "spherical";
    case Metric::CDF: return "cdf";
  }
  return "?";
}

inline std::string_view to_string(Weighting w) {
  switch (w) {
    case Weighting::Overall: return "overall";
    case Weighting::StateAverage: return "state_average";
    case Weighting::EvWeighted: return "ev_weighted";
  }
  return "?";
}

inline std::optional<Metric> parse_metric(std::string_view s) {
  for (Metric m : {Metric::Brier, Metric::LogLik, Metric::Selten, Metric::Spherical,
                   Metric::CDF}) {
    if (s == to_string(m)) return m;
  }
  if (s == "loglik") return Metric::LogLik;
  return std::nullopt;
}

inline bool is_density_metric(Metric m) {
  return m == Metric::Selten || m == Metric::Spherical || m == Metric::CDF;
}

inline bool lower_is_better(Metric m) { return m == Metric::Brier || m == Metric::CDF; }

struct ScoreReport {
  std::string forecaster;
  Metric metric = Metric::Brier;
  double value = 0.0;
  Weighting weighting = Weighting::Overall;
};

namespace detail {

inline void check_binary(const BinaryForecastSeries& s, const Realization& r) {
  if (r.kind() != Realization::Kind::Binary) {
    throw InputError("binary score needs a binary realization");
  }
  if (s.points.empty()) throw InputError("score undefined for an empty series");
  for (std::size_t k = 0; k < s.points.size(); ++k) {
    const double p = s.points[k].p;
    if (!(p >= 0.0 && p <= 1.0)) throw InputError("probability outside [0,1]");
    if (k > 0 && !(s.points[k - 1].t < s.points[k].t)) {
      throw InputError("series times must be strictly increasing");
    }
  }
}

inline std::size_t check_density(const HistogramForecast& h, const Realization& r) {
  if (r.kind() != Realization::Kind::Density) {
    throw InputError("density score needs a realized bin");
  }
  if (h.bins.empty()) throw InputError("empty histogram");
  double sum = 0.0;
  for (double p : h.bins) {
    if (!(p >= 0.0) || !std::isfinite(p)) throw InputError("histogram bin is negative or not finite");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw InputError("histogram does not sum to 1");
  const auto i = static_cast<std::size_t>(r.value());
  if (i >= h.bins.size()) throw InputError("realized bin outside histogram support");
  return i;
}

inline double sum_squares(std::span<const double> p) {
  double s = 0.0;
  for (double v : p) s += v * v;
  return s;
}

}  // namespace detail

// Sum over t of (omega - p_t)^2.
inline double brier(const BinaryForecastSeries& series, const Realization& omega) {
  detail::check_binary(series, omega);
  const double w = omega.value();
  double s = 0.0;
  for (const auto& pt : series.points) s += (w - pt.p) * (w - pt.p);
  return s;
}

// Sum over t of ln(omega p_t + (1 - omega)(1 - p_t)); -inf with the
// hypersensitive flag when a certain forecast was wrong.
inline LogScore log_likelihood(const BinaryForecastSeries& series, const Realization& omega) {
  detail::check_binary(series, omega);
  const double w = omega.value();
  LogScore out;
  for (const auto& pt : series.points) {
    const double q = w * pt.p + (1.0 - pt.p) * (1.0 - w);
    if (q <= 0.0) {
      out.hypersensitive = true;
      out.value = -std::numeric_limits<double>::infinity();
    } else if (!out.hypersensitive) {
      out.value += std::log(q);
    }
  }
  return out;
}

// 2 p_realized - sum p_i^2, in [-1, 1].
inline double selten(const HistogramForecast& h, const Realization& realized) {
  const auto i = detail::check_density(h, realized);
  return 2.0 * h.bins[i] - detail::sum_squares(h.bins);
}

// p_realized / ||p||_2, in [0, 1].
inline double spherical(const HistogramForecast& h, const Realization& realized) {
  const auto i = detail::check_density(h, realized);
  return h.bins[i] / std::sqrt(detail::sum_squares(h.bins));
}

// Unit-width discretization of the integrated squared CDF distance:
// sum_k (F(k) - 1{k >= realized})^2.
inline double cdf_score(const HistogramForecast& h, const Realization& realized) {
  const auto i = detail::check_density(h, realized);
  double cdf = 0.0;
  double s = 0.0;
  for (std::size_t k = 0; k < h.bins.size(); ++k) {
    cdf += h.bins[k];
    const double d = cdf - (k >= i ? 1.0 : 0.0);
    s += d * d;
  }
  return s;
}

// Multi-category Brier penalty sum_i (onehot_i - p_i)^2 = 1 - selten.
inline double histogram_brier(const HistogramForecast& h, const Realization& realized) {
  const auto i = detail::check_density(h, realized);
  double s = 0.0;
  for (std::size_t k = 0; k < h.bins.size(); ++k) {
    const double d = (k == i ? 1.0 : 0.0) - h.bins[k];
    s += d * d;
  }
  return s;
}

// ln p_realized.
inline LogScore histogram_log(const HistogramForecast& h, const Realization& realized) {
  const auto i = detail::check_density(h, realized);
  if (h.bins[i] <= 0.0) return {-std::numeric_limits<double>::infinity(), true};
  return {std::log(h.bins[i]), false};
}

// Scores a density report under any metric (Brier and log in their
// categorical forms).
inline double score_histogram(Metric m, const HistogramForecast& h, const Realization& r) {
  switch (m) {
    case Metric::Brier: return histogram_brier(h, r);
    case Metric::LogLik: return histogram_log(h, r).value;
    case Metric::Selten: return selten(h, r);
    case Metric::Spherical: return spherical(h, r);
    case Metric::CDF: return cdf_score(h, r);
  }
  return 0.0;
}

struct EventScore {
  std::string event;  // state code
  double value = 0.0;
};

// StateAverage: unweighted mean over events. EvWeighted: mean weighted by
// electoral votes. Overall passes a single event through.
inline ScoreReport aggregate_scores(const std::string& forecaster, Metric metric,
                                    std::span<const EventScore> scores, Weighting weighting,
                                    const EvTable* ev = nullptr) {
  if (scores.empty()) throw InputError("score undefined for an empty set of events");
  if (is_density_metric(metric) && weighting != Weighting::Overall) {
    throw InputError("density metrics support only overall weighting");
  }
  ScoreReport r{forecaster, metric, 0.0, weighting};
  switch (weighting) {
    case Weighting::Overall:
      if (scores.size() != 1) throw InputError("overall weighting expects a single event");
      r.value = scores.front().value;
      break;
    case Weighting::StateAverage: {
      double s = 0.0;
      for (const auto& e : scores) s += e.value;
      r.value = s / static_cast<double>(scores.size());
      break;
    }
    case Weighting::EvWeighted: {
      if (ev == nullptr) throw ConfigError("EV weighting needs an EV table");
      double s = 0.0;
      double w = 0.0;
      for (const auto& e : scores) {
        const double votes = ev->at(e.event);
        s += votes * e.value;
        w += votes;
      }
      r.value = s / w;
      break;
    }
  }
  return r;
}

// Gaussian density discretized on bins 0..n_bins-1 (normalized in the log
// domain, so far tails stay positive).
inline HistogramForecast discretized_gaussian(double mean, double sd,
                                              int n_bins = kHistogramBins) {
  if (!(sd > 0.0)) throw InputError("sd must be positive");
  std::vector<double> logw(n_bins);
  double mx = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < n_bins; ++k) {
    const double z = (k - mean) / sd;
    logw[k] = -0.5 * z * z;
    mx = std::max(mx, logw[k]);
  }
  double sum = 0.0;
  for (double v : logw) sum += std::exp(v - mx);
  const double log_norm = mx + std::log(sum);
  HistogramForecast h;
  h.bins.resize(n_bins);
  for (int k = 0; k < n_bins; ++k) h.bins[k] = std::exp(logw[k] - log_norm);
  return h;
}

// values[r][d] = score of density d at realization r.
struct ScoreCurve {
  Metric metric = Metric::Selten;
  std::vector<int> realizations;
  std::vector<std::vector<double>> values;
};

inline ScoreCurve score_curves(Metric metric, std::span<const HistogramForecast> densities,
                               std::span<const int> realizations) {
  ScoreCurve c;
  c.metric = metric;
  c.realizations.assign(realizations.begin(), realizations.end());
  c.values.reserve(realizations.size());
  for (int r : realizations) {
    std::vector<double> row;
    row.reserve(densities.size());
    for (const auto& h : densities) {
      row.push_back(score_histogram(metric, h, Realization::density(r)));
    }
    c.values.push_back(std::move(row));
  }
  return c;
}

// -inf is written as the string "-inf" since JSON has no infinities.
inline nlohmann::json to_json(const ScoreReport& r) {
  nlohmann::json v;
  if (std::isinf(r.value)) {
    v = r.value < 0 ? "-inf" : "inf";
  } else {
    v = r.value;
  }
  return {{"forecaster", r.forecaster},
          {"metric", std::string(to_string(r.metric))},
          {"weighting", std::string(to_string(r.weighting))},
          {"value", v}};
}

}  // namespace elecast
