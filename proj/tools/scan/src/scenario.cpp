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

#include "qheat/scan/scenario.hpp"

#include <numbers>
#include <regex>

#include "qheat/errors.hpp"

namespace qheat::scan {

namespace {

using Defaults = std::map<std::string, std::string>;

const Defaults kExperimentTime{
    {"state.beta_C", "1.13"}, {"state.beta_H", "0.9618"}, {"state.gamma", "-0.19"},
    {"state.gamma_im", "0"},  {"state.E", "1"},           {"unitary.J", "215.1"},
    {"unitary.t", "0.001"},
};

const Defaults kQubitThetaEta{
    {"state.beta_C", "1.13"}, {"state.beta_H", "0.962"}, {"state.P00", "0.547"},
    {"state.eta", "-0.19"},   {"state.xi", "0"},         {"state.E", "1"},
    {"unitary.theta", "0.5"}, {"unitary.phi", "0"},      {"unitary.lambda", "0"},
    {"unitary.kappa", "0"},
};

const Defaults kQutritThetaGrid{
    {"state.beta_C", "1.3"},   {"state.beta_H", "0.3"},    {"state.E1", "1"},
    {"state.E2", "1.15"},      {"state.rho0", "0.3"},      {"state.rho5", "0.03"},
    {"state.rho7", "0.07"},    {"state.rho8", "0.06"},     {"state.eta13", "1"},
    {"state.eta26", "1"},      {"state.eta57", "1"},       {"state.xi13", "0"},
    {"state.xi26", "0"},       {"state.xi57", "0"},        {"unitary.theta01", "0.5"},
    {"unitary.theta02", "0.5"}, {"unitary.theta12", "0.5"}, {"unitary.theta12_follows_theta02", "true"},
    {"unitary.phi01", "0"},    {"unitary.phi02", "0"},     {"unitary.phi12", "0"},
    {"unitary.lambda01", "0"}, {"unitary.lambda02", "0"},  {"unitary.lambda12", "0"},
};

const Defaults kNonideal{
    {"state.beta_C", "1.13"}, {"state.beta_H", "0.9618"}, {"state.gamma", "-0.19"},
    {"state.gamma_im", "0"},  {"state.Delta", "0"},       {"unitary.J", "220"},
    {"unitary.t", "0.004"},   {"unitary.Jx", "0"},
};

const Defaults kCustom{
    {"state.levels", "0,1"},
    {"state.beta_C", "1"},
    {"state.beta_H", "0.5"},
};

const std::regex kCustomPattern(
    R"(state\.pop\.\d+|state\.coh\.\d+_\d+\.(eta|xi)|unitary\.rot\.\d+_\d+\.(theta|phi|lambda|kappa))");

bool is_global_key(const std::string& key) {
  static const std::regex pattern(
      R"(scenario|sweep\.axis[12]\.(name|min|max|n)|output\.columns|probe\.(target_C|target_H|epsilon|shots|seed))");
  return std::regex_match(key, pattern);
}

std::pair<int, int> manifold_of(const std::string& tag) {
  const auto us = tag.find('_');
  return {std::stoi(tag.substr(0, us)), std::stoi(tag.substr(us + 1))};
}

ScenarioInstance experiment_time(const Config& c) {
  ExperimentStateParams p;
  p.beta_cold = c.number("state.beta_C");
  p.beta_hot = c.number("state.beta_H");
  p.gamma = Complex(c.number("state.gamma"), c.number("state.gamma_im"));
  p.gap_cold = p.gap_hot = c.number("state.E");
  BipartiteSystem sys = experiment_state(p);
  const double coupling = c.number("unitary.J");
  const double t = c.number("unitary.t");
  UnitaryReport u = experiment_unitary(coupling, t, p.gap_cold);
  // Rotation frequency from the spectrum of the interaction, not a closed form.
  const auto ev = hermitian_eigenvalues(experiment_interaction(coupling));
  const double omega = 0.5 * (ev.back() - ev.front());
  return {std::move(sys), std::move(u.matrix), 0.0,
          {{"rotation_angle", omega * t}, {"period_fraction", omega * t / std::numbers::pi}}};
}

ScenarioInstance qubit_theta_eta(const Config& c) {
  TwoQubitParams p;
  p.beta_cold = c.number("state.beta_C");
  p.beta_hot = c.number("state.beta_H");
  p.gap = c.number("state.E");
  p.p00 = c.number("state.P00");
  p.eta = c.number("state.eta");
  p.xi = c.number("state.xi");
  BipartiteSystem sys = two_qubit_state(p);
  UnitaryReport u = two_qubit_unitary(c.number("unitary.theta"), c.number("unitary.kappa"),
                                      c.number("unitary.lambda"), c.number("unitary.phi"), p.gap);
  return {std::move(sys), std::move(u.matrix), 0.0, {}};
}

ScenarioInstance qutrit_theta_grid(const Config& c) {
  QutritStateParams p;
  p.beta_cold = c.number("state.beta_C");
  p.beta_hot = c.number("state.beta_H");
  p.e1 = c.number("state.E1");
  p.e2 = c.number("state.E2");
  p.rho0 = c.number("state.rho0");
  p.rho5 = c.number("state.rho5");
  p.rho7 = c.number("state.rho7");
  p.rho8 = c.number("state.rho8");
  p.eta13 = c.number("state.eta13");
  p.eta26 = c.number("state.eta26");
  p.eta57 = c.number("state.eta57");
  p.xi13 = c.number("state.xi13");
  p.xi26 = c.number("state.xi26");
  p.xi57 = c.number("state.xi57");
  BipartiteSystem sys = two_qutrit_state(p);
  const double t02 = c.number("unitary.theta02");
  const double t12 = c.flag("unitary.theta12_follows_theta02", true) ? t02 : c.number("unitary.theta12");
  const std::vector<ManifoldRotation> rots{
      {0, 1, c.number("unitary.theta01"), c.number("unitary.phi01"), c.number("unitary.lambda01")},
      {0, 2, t02, c.number("unitary.phi02"), c.number("unitary.lambda02")},
      {1, 2, t12, c.number("unitary.phi12"), c.number("unitary.lambda12")},
  };
  UnitaryReport u = qudit_energy_preserving(sys.cold(), rots);
  return {std::move(sys), std::move(u.matrix), 0.0, {}};
}

ScenarioInstance nonideal(const Config& c) {
  const double delta = c.number("state.Delta");
  ExperimentStateParams p;
  p.beta_cold = c.number("state.beta_C");
  p.beta_hot = c.number("state.beta_H");
  p.gamma = Complex(c.number("state.gamma"), c.number("state.gamma_im"));
  p.gap_cold = 1 - delta;
  p.gap_hot = 1 + delta;
  BipartiteSystem sys = experiment_state(p);
  PerturbedExchange x;
  x.coupling = c.number("unitary.J");
  x.time = c.number("unitary.t");
  x.jx = c.number("unitary.Jx");
  x.gap_cold = p.gap_cold;
  x.gap_hot = p.gap_hot;
  UnitaryReport u = perturbed_unitary(x);
  return {std::move(sys), std::move(u.matrix), u.epsilon, {}};
}

ScenarioInstance custom(const Config& c) {
  const EnergySpectrum spectrum(c.numbers("state.levels"));
  const int d = spectrum.dimension();
  QuditStateParams p;
  p.cold = p.hot = spectrum;
  p.beta_cold = c.number("state.beta_C");
  p.beta_hot = c.number("state.beta_H");
  std::map<std::pair<int, int>, ManifoldCoherence> coh;
  std::map<std::pair<int, int>, ManifoldRotation> rot;
  for (const auto& [key, value] : c.entries()) {
    if (key.rfind("state.pop.", 0) == 0) {
      p.free_populations[std::stoi(key.substr(10))] = parse_number(value, key);
    } else if (key.rfind("state.coh.", 0) == 0) {
      const std::string rest = key.substr(10);
      const auto dot = rest.find('.');
      const auto nm = manifold_of(rest.substr(0, dot));
      ManifoldCoherence& m = coh[nm];
      m.n = nm.first;
      m.m = nm.second;
      (rest.substr(dot + 1) == "eta" ? m.eta : m.xi) = parse_number(value, key);
    } else if (key.rfind("unitary.rot.", 0) == 0) {
      const std::string rest = key.substr(12);
      const auto dot = rest.find('.');
      const auto nm = manifold_of(rest.substr(0, dot));
      ManifoldRotation& r = rot[nm];
      r.n = nm.first;
      r.m = nm.second;
      const std::string field = rest.substr(dot + 1);
      double& slot = field == "theta" ? r.theta : field == "phi" ? r.phi : field == "lambda" ? r.lam : r.kappa;
      slot = parse_number(value, key);
    }
  }
  if (p.free_populations.empty()) {
    const auto gc = gibbs_populations(spectrum, p.beta_cold);
    const auto gh = gibbs_populations(spectrum, p.beta_hot);
    for (int n = 1; n < d; ++n)
      for (int m = 1; m < d; ++m)
        p.free_populations[n * d + m] = gc[static_cast<std::size_t>(n)] * gh[static_cast<std::size_t>(m)];
  }
  for (const auto& [nm, m] : coh) p.coherences.push_back(m);
  BipartiteSystem sys = qudit_locally_thermal(p);
  std::vector<ManifoldRotation> rotations;
  for (const auto& [nm, r] : rot) rotations.push_back(r);
  UnitaryReport u = qudit_energy_preserving(spectrum, rotations);
  return {std::move(sys), std::move(u.matrix), 0.0, {}};
}

}  // namespace

Scenario parse_scenario(const std::string& name) {
  if (name == "experiment-time") return Scenario::ExperimentTime;
  if (name == "qubit-theta-eta") return Scenario::QubitThetaEta;
  if (name == "qutrit-theta-grid") return Scenario::QutritThetaGrid;
  if (name == "nonideal-eps-delta") return Scenario::NonidealEpsDelta;
  if (name == "custom") return Scenario::Custom;
  throw ConfigError("unknown scenario '" + name + "'");
}

const char* to_string(Scenario s) {
  switch (s) {
    case Scenario::ExperimentTime: return "experiment-time";
    case Scenario::QubitThetaEta: return "qubit-theta-eta";
    case Scenario::QutritThetaGrid: return "qutrit-theta-grid";
    case Scenario::NonidealEpsDelta: return "nonideal-eps-delta";
    case Scenario::Custom: return "custom";
  }
  return "?";
}

const std::map<std::string, std::string>& scenario_defaults(Scenario s) {
  switch (s) {
    case Scenario::ExperimentTime: return kExperimentTime;
    case Scenario::QubitThetaEta: return kQubitThetaEta;
    case Scenario::QutritThetaGrid: return kQutritThetaGrid;
    case Scenario::NonidealEpsDelta: return kNonideal;
    case Scenario::Custom: return kCustom;
  }
  return kCustom;
}

bool is_parameter_key(Scenario s, const std::string& key) {
  if (scenario_defaults(s).contains(key)) return true;
  return s == Scenario::Custom && std::regex_match(key, kCustomPattern);
}

std::vector<std::string> extra_columns(Scenario s) {
  if (s == Scenario::ExperimentTime) return {"rotation_angle", "period_fraction"};
  return {};
}

Scenario validate(const Config& cfg) {
  const auto name = cfg.raw("scenario");
  if (!name) throw ConfigError("missing required key 'scenario'");
  const Scenario s = parse_scenario(*name);
  for (const auto& [key, value] : cfg.entries()) {
    if (!is_global_key(key) && !is_parameter_key(s, key)) {
      throw ConfigError("unknown key '" + key + "' for scenario " + to_string(s));
    }
  }
  return s;
}

Config resolve(const Config& cfg) {
  const Scenario s = validate(cfg);
  Config out = cfg;
  for (const auto& [key, value] : scenario_defaults(s))
    if (!out.has(key)) out.set(key, value);
  return out;
}

ScenarioInstance build_instance(Scenario s, const Config& resolved) {
  switch (s) {
    case Scenario::ExperimentTime: return experiment_time(resolved);
    case Scenario::QubitThetaEta: return qubit_theta_eta(resolved);
    case Scenario::QutritThetaGrid: return qutrit_theta_grid(resolved);
    case Scenario::NonidealEpsDelta: return nonideal(resolved);
    case Scenario::Custom: return custom(resolved);
  }
  throw ConfigError("unknown scenario");
}

}  // namespace qheat::scan
