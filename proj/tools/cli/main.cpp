// Copyright 2026 The qheat Authors
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

// qheat: sweeps, single-point reports and the property suite.
//
// Exit codes: 0 success, 1 usage error, 2 infeasible point, 3 property
// suite failure.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qheat/errors.hpp"
#include "qheat/scan/config.hpp"
#include "qheat/scan/properties.hpp"
#include "qheat/scan/report.hpp"
#include "qheat/scan/sweep.hpp"
#include "qheat/scan/version.hpp"

namespace {

constexpr int kUsage = 1;
constexpr int kInfeasible = 2;
constexpr int kPropertyFailure = 3;

qheat::scan::Config load_config(const std::string& path, const std::vector<std::string>& overrides) {
  qheat::scan::Config cfg = qheat::scan::Config::load(path);
  for (const auto& o : overrides) cfg.apply_override(o);
  return cfg;
}

// Writes through `body` to the file at `path`, or stdout when empty.
template <class Body>
void with_output(const std::string& path, Body body) {
  if (path.empty()) {
    body(std::cout);
    return;
  }
  std::ofstream os(path);
  if (!os) throw qheat::scan::ConfigError("cannot open output file '" + path + "'");
  body(os);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heat-exchange quasiprobabilities, witnesses and parameter sweeps"};
  app.set_version_flag("--version", qheat::scan::kVersion);
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::vector<std::string> overrides;
  std::uint64_t seed = qheat::scan::kDefaultPropertySeed;
  int trials = 500;
  unsigned threads = 0;

  CLI::App* sweep = app.add_subcommand("sweep", "Evaluate a 1- or 2-axis parameter grid and write CSV");
  sweep->add_option("config", config_path, "Config file")->required();
  sweep->add_option("--out,-o", out_path, "CSV destination (default stdout)");
  sweep->add_option("--set", overrides, "Override a config key, key=value");
  sweep->add_option("--threads", threads, "Worker threads (default QHEAT_THREADS or hardware)");

  CLI::App* point = app.add_subcommand("point", "Full JSON report for a single configured point");
  point->add_option("config", config_path, "Config file")->required();
  point->add_option("--out,-o", out_path, "JSON destination (default stdout)");
  point->add_option("--set", overrides, "Override a config key, key=value");

  CLI::App* check = app.add_subcommand("check", "Run the randomized property suite");
  check->add_option("--seed", seed, "Generator seed");
  check->add_option("--trials", trials, "Instances per property")->check(CLI::PositiveNumber);
  check->add_option("--out,-o", out_path, "Summary destination (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (*sweep) {
      const auto spec = qheat::scan::parse_sweep_spec(load_config(config_path, overrides));
      const auto result =
          qheat::scan::run_sweep(spec, threads > 0 ? threads : qheat::scan::default_thread_count());
      with_output(out_path, [&](std::ostream& os) { qheat::scan::write_sweep_csv(os, result); });
      std::cerr << "qheat: " << result.cells.size() << " cells, " << result.infeasible
                << " not ok\n";
      return 0;
    }
    if (*point) {
      const auto cfg = load_config(config_path, overrides);
      nlohmann::json report;
      try {
        report = qheat::scan::analyze_point(cfg);
      } catch (const qheat::Error& e) {
        std::cerr << "qheat: infeasible point: " << e.what() << '\n';
        return kInfeasible;
      }
      with_output(out_path, [&](std::ostream& os) { os << report.dump(2) << '\n'; });
      return 0;
    }
    const auto summary = qheat::scan::run_property_suite(seed, trials);
    with_output(out_path, [&](std::ostream& os) { qheat::scan::print_property_summary(os, summary); });
    return summary.passed() ? 0 : kPropertyFailure;
  } catch (const qheat::scan::ConfigError& e) {
    std::cerr << "qheat: " << e.what() << '\n';
    return kUsage;
  }
}
