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


// Acceptance gate. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "elecast/app/commands.hpp"
#include "elecast/online.hpp"
#include "elecast/scoring.hpp"
#include "elecast/simulation.hpp"
#include "elecast/trading.hpp"
#include "test_support.hpp"

namespace {

using namespace elecast;
namespace fs = std::filesystem;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// 1. Propriety over the 3-bin simplex, step 0.05.
Outcome propriety() {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<std::vector<double>> grid;
  for (int i = 0; i <= 20; ++i) {
    for (int j = 0; i + j <= 20; ++j) grid.push_back({i / 20.0, j / 20.0, (20 - i - j) / 20.0});
  }
  const Metric metrics[] = {Metric::Brier, Metric::LogLik, Metric::Selten, Metric::Spherical,
                            Metric::CDF};
  std::size_t checked = 0;
  for (Metric m : metrics) {
    const double sign = lower_is_better(m) ? -1.0 : 1.0;  // compare as rewards
    for (std::size_t ip = 0; ip < grid.size(); ++ip) {
      const auto& p = grid[ip];
      std::vector<double> expected(grid.size());
      for (std::size_t iq = 0; iq < grid.size(); ++iq) {
        const HistogramForecast q{grid[iq]};
        double e = 0.0;
        for (int w = 0; w < 3; ++w) {
          if (p[w] == 0.0) continue;  // 0 * S counts as 0, even when S is -inf
          e += p[w] * score_histogram(m, q, Realization::density(w));
        }
        expected[iq] = sign * e;
      }
      for (std::size_t iq = 0; iq < grid.size(); ++iq) {
        ++checked;
        if (iq != ip && !(expected[iq] < expected[ip])) {
          return {false, fmt("%s: report (%.2f,%.2f,%.2f) ties or beats truth (%.2f,%.2f,%.2f)",
                             std::string(to_string(m)).c_str(), grid[iq][0], grid[iq][1],
                             grid[iq][2], p[0], p[1], p[2])};
        }
      }
    }
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {secs < 60.0, fmt("%zu truths x 5 metrics, %zu comparisons, unique optimum at Q=P, %.2f s",
                           grid.size(), checked, secs)};
}

// 2. CDF score equals E|X - w| - E|X - X'| / 2.
Outcome crps() {
  std::mt19937_64 gen(538);
  std::uniform_int_distribution<int> bin(0, 538);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> p(539, 0.0);
    const int kind = trial % 3;
    if (kind == 0) {  // dense
      for (auto& v : p) v = std::exponential_distribution<>(1)(gen);
    } else if (kind == 1) {  // a few atoms
      for (int k = 0; k < 5; ++k) p[bin(gen)] += std::uniform_real_distribution<>(0, 1)(gen);
    } else {  // bump
      const auto g = discretized_gaussian(bin(gen), 5 + trial);
      p = g.bins;
    }
    double sum = 0;
    for (double v : p) sum += v;
    for (auto& v : p) v /= sum;
    const int w = bin(gen);
    long double a = 0, b = 0;
    for (int i = 0; i < 539; ++i) {
      if (p[i] == 0) continue;
      a += p[i] * std::abs(i - w);
      for (int j = 0; j < 539; ++j) b += (long double)p[i] * p[j] * std::abs(i - j);
    }
    const double oracle = static_cast<double>(a - 0.5L * b);
    worst = std::max(worst, std::abs(cdf_score({p}, Realization::density(w)) - oracle));
  }
  return {worst <= 1e-9, fmt("100 histograms, max |cdf - crps| = %.3g (tol 1e-9)", worst)};
}

// 3. Terminal law of the national spread.
Outcome brownian() {
  const MarketCalibration m{1.0, 1.0, 3.0, 25.0};  // sigma_total 2
  SimulationConfig cfg;
  cfg.n_paths = 10000;
  cfg.seed = 20161108;
  const auto x = simulate_market_terminals(m, cfg);
  double mean = 0;
  for (double v : x) mean += v;
  mean /= x.size();
  double ss = 0;
  for (double v : x) ss += (v - mean) * (v - mean);
  const double var = ss / (x.size() - 1);
  const double mean_tol = 4.0 * 2.0 * 5.0 / 100.0;
  const bool ok = std::abs(var - 100.0) <= 5.0 && std::abs(mean - 3.0) <= mean_tol;
  return {ok, fmt("variance %.3f (100 +/- 5), mean %.4f (3 +/- %.2f)", var, mean, mean_tol)};
}

// 4. Regret of exponential weights, N = 5, T = 100.
Outcome regret() {
  constexpr std::size_t N = 5, T = 100;
  const double bound = regret_bound(N, T);
  ExpertPanel panel;
  for (std::size_t i = 0; i < N; ++i) panel.names.push_back("e" + std::to_string(i));
  const Date d0 = *csv::parse_date("2016-01-01");
  for (std::size_t t = 0; t < T; ++t) {
    panel.dates.push_back(d0 + std::chrono::days(t));
    panel.predictions.emplace_back(N, 0.5);
  }
  double worst = -std::numeric_limits<double>::infinity();
  std::size_t trials = 0;
  const auto check = [&](const std::vector<std::vector<double>>& losses) {
    const auto r = run(panel, losses, T);
    worst = std::max(worst, r.regret);
    ++trials;
    return r.regret <= bound;
  };
  bool ok = true;
  std::mt19937_64 gen(100);
  std::uniform_real_distribution<> u(0, 1);
  std::bernoulli_distribution coin(0.5);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<std::vector<double>> losses(T, std::vector<double>(N));
    for (auto& row : losses) {
      for (auto& l : row) l = trial % 2 ? u(gen) : double(coin(gen));
    }
    ok &= check(losses);
  }
  // Adversarial: the best expert switches halfway, and a greedy adversary
  // that always hits the currently heaviest expert.
  std::vector<std::vector<double>> sw(T, std::vector<double>(N, 1.0));
  for (std::size_t t = 0; t < T; ++t) sw[t][t < T / 2 ? 0 : 1] = 0.0;
  ok &= check(sw);
  std::vector<std::vector<double>> greedy;
  auto state = init(N, T);
  for (std::size_t t = 0; t < T; ++t) {
    std::vector<double> row(N, 0.0);
    row[std::max_element(state.weights.begin(), state.weights.end()) - state.weights.begin()] = 1.0;
    state = update(state, row);
    greedy.push_back(row);
  }
  ok &= check(greedy);
  return {ok, fmt("%zu trials, max regret %.4f <= bound %.4f", trials, worst, bound)};
}

// 5. Settled trading P&L against the pair mean with a fixed opponent.
Outcome trading_propriety() {
  const Date d = *csv::parse_date("2016-11-07");
  int worst_miss = 0;
  std::size_t cases = 0;
  for (int b100 : {0, 20, 50, 80, 100}) {
    for (int p10 = 1; p10 <= 9; ++p10) {
      const double p = p10 / 10.0;
      int best = -1;
      double best_e = -std::numeric_limits<double>::infinity();
      for (int a100 = 0; a100 <= 100; ++a100) {
        const std::vector<BinaryForecastSeries> pair = {{"a", {{d, a100 / 100.0}}},
                                                        {"b", {{d, b100 / 100.0}}}};
        const auto ref = mean_reference(pair);
        const double e = p * trading_score(pair[0], ref, Realization::binary(1)) +
                         (1 - p) * trading_score(pair[0], ref, Realization::binary(0));
        if (e > best_e) best_e = e, best = a100;
      }
      worst_miss = std::max(worst_miss, std::abs(best - p10 * 10));
      ++cases;
    }
  }
  return {worst_miss <= 1, fmt("%zu (p, opponent) cases, max |argmax a - p| = %.2f", cases,
                               worst_miss / 100.0)};
}

// 6. Selten is blind to distance, CDF is not.
Outcome topology() {
  std::vector<double> near(539, 0.0), far(539, 0.0);
  near[226] = 1.0;
  far[538] = 1.0;
  const auto w = Realization::density(227);
  const double s1 = selten({near}, w), s2 = selten({far}, w);
  const double c1 = cdf_score({near}, w), c2 = cdf_score({far}, w);
  return {s1 == s2 && c1 == 1.0 && c2 == 311.0,
          fmt("selten %g vs %g, cdf %g vs %g", s1, s2, c1, c2)};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// 7. Same bytes for 1 and k worker threads.
Outcome parallel() {
  const fs::path dir = fs::temp_directory_path() / "elecast_acceptance_threads";
  fs::remove_all(dir);
  app::RunConfig cfg;
  app::load_config(cfg, testing::data_path("fixtures/forecast.conf"));
  std::ostringstream log;
  std::vector<std::string> outputs;
  for (unsigned k : {1u, 4u}) {
    cfg.threads = k;
    cfg.out_dir = dir / std::to_string(k);
    app::cmd_forecast(cfg, log);
    outputs.push_back(slurp(cfg.out_dir / "forecast.json"));
  }
  fs::remove_all(dir);
  return {!outputs[0].empty() && outputs[0] == outputs[1],
          fmt("forecast.json with 1 and 4 threads: %zu bytes, %s", outputs[0].size(),
              outputs[0] == outputs[1] ? "identical" : "different")};
}

// 8. Symmetric inputs give coin-flip probabilities.
Outcome symmetry() {
  const auto& ev = testing::ev_2016();
  bool ok = true;
  std::string detail;
  for (const NoiseModel& model : {NoiseModel{GaussianNoise{}}, NoiseModel{StudentTNoise{}}}) {
    SimulationConfig cfg;
    cfg.n_paths = 10000;
    cfg.seed = 8;
    cfg.noise_model = model;
    const auto f = run_forecast(testing::uniform_calibrations(0, 0, 3), {0.5, 0.5, 0, 30}, ev, cfg);
    const auto [lo, hi] = std::minmax_element(f.p_state.begin(), f.p_state.end());
    ok &= *lo >= 0.48 && *hi <= 0.52 && f.p_national >= 0.44 && f.p_national <= 0.52;
    detail += fmt("%s p_state [%.4f, %.4f] p_national %.4f; ",
                  std::holds_alternative<GaussianNoise>(model) ? "gaussian" : "student_t", *lo, *hi,
                  f.p_national);
  }
  detail.resize(detail.size() - 2);
  return {ok, detail};
}

// 9. More time to election means less certainty.
Outcome time_uncertainty() {
  const auto& ev = testing::ev_2016();
  SimulationConfig cfg;
  cfg.n_paths = 10000;
  cfg.seed = 9;
  const auto cals = testing::uniform_calibrations(0, 1, 3);
  const auto far = run_forecast(cals, {0.3, 0.3, 2.0, 100}, ev, cfg).p_national;
  const auto near = run_forecast(cals, {0.3, 0.3, 2.0, 1}, ev, cfg).p_national;
  return {std::abs(far - 0.5) <= std::abs(near - 0.5) + 0.02,
          fmt("lead 2.0: p_national %.4f at 100 days, %.4f at 1 day", far, near)};
}

// 10. Learning rate for N = 2, T = 8.
Outcome eta() {
  const double got = init(2, 8).eta;
  const double want = std::sqrt(std::log(2.0));
  return {std::abs(got - want) <= 1e-12, fmt("eta %.17g vs sqrt(ln 2) %.17g", got, want)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"AC1  propriety on the 3-bin simplex", propriety},
      {"AC2  cdf score equals crps", crps},
      {"AC3  brownian terminal law", brownian},
      {"AC4  exponential-weights regret bound", regret},
      {"AC5  trading score propriety", trading_propriety},
      {"AC6  selten vs cdf topology", topology},
      {"AC7  deterministic parallelism", parallel},
      {"AC8  symmetric inputs", symmetry},
      {"AC9  time uncertainty", time_uncertainty},
      {"AC10 learning rate constant", eta},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("[%s] %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
