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

#pragma once

// Grid sweeps over one or two config parameters, evaluated in parallel and
// written as CSV with a '#' metadata block.

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "qheat/scan/config.hpp"
#include "qheat/scan/evaluate.hpp"
#include "qheat/scan/scenario.hpp"
#include "qheat/scan/version.hpp"

namespace qheat::scan {

struct Axis {
  std::string key;
  double min = 0;
  double max = 0;
  int n = 2;

  double value(int k) const { return min + (max - min) * k / (n - 1); }
};

struct SweepSpec {
  Scenario scenario = Scenario::Custom;
  Config resolved;
  std::vector<Axis> axes;
  std::vector<std::string> columns;  // selected output columns, axes excluded
};

/// Throws ConfigError for unknown keys, malformed ranges or columns.
SweepSpec parse_sweep_spec(const Config& cfg);

/// Every column a sweep can emit after the axis columns.
std::vector<std::string> available_columns(Scenario s);

struct CellRecord {
  std::vector<double> axis_values;
  std::string status = "ok";  // ok, infeasible, precondition, divergent, error
  std::string detail;
  std::vector<std::pair<std::string, double>> extra;
  std::optional<PointEvaluation> eval;
};

struct SweepResult {
  SweepSpec spec;
  std::string timestamp;
  std::vector<CellRecord> cells;  // axis 1 outer, axis 2 inner
  std::size_t infeasible = 0;
};

/// Worker count from QHEAT_THREADS, else the hardware concurrency.
unsigned default_thread_count();

SweepResult run_sweep(const SweepSpec& spec, unsigned threads = default_thread_count());

/// Evaluates one fully resolved point, mapping library errors to status codes.
CellRecord evaluate_cell(Scenario scenario, const Config& resolved);

void write_sweep_csv(std::ostream& os, const SweepResult& result);

}  // namespace qheat::scan
