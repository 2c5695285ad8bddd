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

// Named parameterizations of (state, unitary) pairs driven by config keys.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qheat/dynamics.hpp"
#include "qheat/scan/config.hpp"
#include "qheat/states.hpp"

namespace qheat::scan {

enum class Scenario { ExperimentTime, QubitThetaEta, QutritThetaGrid, NonidealEpsDelta, Custom };

Scenario parse_scenario(const std::string& name);
const char* to_string(Scenario s);

struct ScenarioInstance {
  BipartiteSystem sys;
  ComplexMatrix u;
  std::optional<double> epsilon;  // ||U - U_ep|| when the family defines U_ep
  std::vector<std::pair<std::string, double>> extra;
};

/// Parameter keys with their default values.
const std::map<std::string, std::string>& scenario_defaults(Scenario s);

/// True for a state./unitary. key the scenario understands.
bool is_parameter_key(Scenario s, const std::string& key);

/// Names of the scenario-specific output columns, in order.
std::vector<std::string> extra_columns(Scenario s);

/// Scenario from the `scenario` key; throws ConfigError for unknown keys.
Scenario validate(const Config& cfg);

/// Config with every scenario default filled in.
Config resolve(const Config& cfg);

/// Throws qheat::Error subclasses when the point is infeasible.
ScenarioInstance build_instance(Scenario s, const Config& resolved);

}  // namespace qheat::scan
