// Copyright 2026 The rtnb Authors
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

// rtnb <scenario> --config <path> --out <path> [--workers N] [--seed S]
//
// Exit codes: 0 ok, 1 config error, 2 validation failure, 3 truncation error.

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "config.hpp"
#include "rtnb/errors.hpp"
#include "scenarios.hpp"

namespace {

std::string utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace rtnb::cli;
  CLI::App app{"Telegraph-noise bosonic simulator: scenario configs in, CSV series out"};
  std::string scenario, config_path, out_path;
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  std::uint64_t seed = 0;
  app.add_option("scenario", scenario, "Scenario to run")
      ->required()
      ->check(CLI::IsMember(scenario_names()));
  app.add_option("--config", config_path, "Flat YAML config file")->required();
  app.add_option("--out", out_path, "CSV output path ('-' for stdout)")->required();
  auto* wopt = app.add_option("--workers", workers, "Worker threads (default: number of cores)")
                   ->check(CLI::Range(1u, 1024u));
  auto* sopt = app.add_option("--seed", seed, "Base RNG seed (overrides the config's seed)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  ResultTable table;
  try {
    ScenarioConfig cfg = ScenarioConfig::load(config_path);
    const std::string declared = cfg.choice("scenario", scenario, scenario_names());
    if (declared != scenario) {
      throw ConfigError(config_path + ": field 'scenario': config is for '" + declared +
                        "' but '" + scenario + "' was requested");
    }
    const long cfg_seed = cfg.integer("seed", 1, 0, std::numeric_limits<long>::max());
    const long cfg_workers = cfg.integer("workers", 0, 0, 1024);
    RunOptions opts;
    opts.seed = sopt->count() ? seed : static_cast<std::uint64_t>(cfg_seed);
    opts.workers = wopt->count() || cfg_workers == 0 ? workers : static_cast<unsigned>(cfg_workers);
    table = run_scenario(scenario, cfg, opts);
    table.meta("generated_utc", utc_now());
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const rtnb::InvalidArgument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const rtnb::TruncationError& e) {
    std::cerr << "truncation error: " << e.what() << "\n";
    return 3;
  } catch (const rtnb::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  if (out_path == "-") {
    write_csv(std::cout, table);
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write " << out_path << "\n";
      return 1;
    }
    write_csv(out, table);
  }
  if (table.validation_failed) {
    std::cerr << "validation failed; see the pass column of " << out_path << "\n";
    return 2;
  }
  return 0;
}
