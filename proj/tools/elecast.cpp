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

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "elecast/app/commands.hpp"

namespace {

using elecast::app::RunConfig;

struct Overrides {
  std::string config;
  std::string seed, paths, out_dir, loss, reference, threads;
  std::vector<std::string> sets;  // key=value
};

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config, "key = value configuration file");
  cmd->add_option("--seed", o.seed, "random seed");
  cmd->add_option("--paths", o.paths, "number of Monte Carlo paths");
  cmd->add_option("--out-dir", o.out_dir, "directory for output files");
  cmd->add_option("--loss", o.loss, "online learner loss")
      ->check(CLI::IsMember({"quadratic", "trading"}));
  cmd->add_option("--reference", o.reference, "trading reference")
      ->check(CLI::IsMember({"market", "pairmean"}));
  cmd->add_option("--threads", o.threads, "simulation worker threads");
  cmd->add_option("--set", o.sets, "override any config key (key=value)");
}

RunConfig resolve(const Overrides& o) {
  RunConfig cfg;
  if (!o.config.empty()) elecast::app::load_config(cfg, o.config);
  for (const auto& kv : o.sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw elecast::ConfigError("--set expects key=value, got " + kv);
    elecast::app::set_option(cfg, kv.substr(0, eq), kv.substr(eq + 1));
  }
  const auto flag = [&](const char* key, const std::string& v) {
    if (!v.empty()) elecast::app::set_option(cfg, key, v);
  };
  flag("seed", o.seed);
  flag("paths", o.paths);
  flag("out_dir", o.out_dir);
  flag("loss", o.loss);
  flag("reference_mode", o.reference);
  flag("threads", o.threads);
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"elecast: election forecasting, scoring and forecaster aggregation"};
  app.require_subcommand(1);

  Overrides o;
  struct Command {
    const char* name;
    const char* help;
    int (*run)(const RunConfig&, std::ostream&);
  };
  const std::vector<Command> commands = {
      {"forecast", "simulate win probabilities and the EV histogram", elecast::app::cmd_forecast},
      {"calibrate", "fit state regressions and market volatility", elecast::app::cmd_calibrate},
      {"score", "score forecasters against realizations", elecast::app::cmd_score},
      {"trade", "trading-score P&L per expert", elecast::app::cmd_trade},
      {"aggregate", "exponential-weights aggregation of experts", elecast::app::cmd_aggregate},
      {"curves", "score-shape curves for discretized Gaussians", elecast::app::cmd_curves},
  };
  std::vector<CLI::App*> subs;
  for (const auto& c : commands) {
    auto* sub = app.add_subcommand(c.name, c.help);
    add_common(sub, o);
    subs.push_back(sub);
  }

  CLI11_PARSE(app, argc, argv);

  for (std::size_t i = 0; i < commands.size(); ++i) {
    if (!subs[i]->parsed()) continue;
    try {
      const auto cfg = resolve(o);
      return commands[i].run(cfg, std::cerr);
    } catch (const elecast::app::StageError& e) {
      std::cerr << "error: " << e.what() << '\n';
      return e.usage() ? 2 : 1;
    } catch (const elecast::ConfigError& e) {
      std::cerr << "error: configuration: " << e.what() << '\n';
      return 2;
    } catch (const elecast::Error& e) {
      std::cerr << "error: " << e.what() << '\n';
      return 1;
    }
  }
  return 2;
}
