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

#include "qheat/scan/report.hpp"

#include <cstdint>
#include <span>

#include "qheat/probe_sim.hpp"
#include "qheat/scan/evaluate.hpp"
#include "qheat/scan/scenario.hpp"
#include "qheat/scan/version.hpp"
#include "qheat/states.hpp"

namespace qheat::scan {

namespace {

using nlohmann::json;

json table_json(const TransitionTable& t) {
  json rows = json::array();
  const int d_h = t.dims().hot;
  const int n = t.dims().joint();
  for (int i = 0; i < n; ++i) {
    for (int f = 0; f < n; ++f) {
      rows.push_back({{"i_C", i / d_h}, {"i_H", i % d_h}, {"f_C", f / d_h}, {"f_H", f % d_h},
                      {"value", t.at(i, f)}, {"dE_C", t.delta_e_cold(i, f)},
                      {"dE_H", t.delta_e_hot(i, f)}});
    }
  }
  return {{"kind", to_string(t.kind())}, {"sum", t.sum()}, {"min", t.min()}, {"entries", rows}};
}

json verdict_json(const WitnessVerdict& v) {
  json secondary = json::array();
  for (const auto& s : v.secondary) {
    secondary.push_back({{"name", s.name}, {"bound", s.bound}, {"violated", s.violated}});
  }
  return {{"id", v.id},         {"bound", v.bound},
          {"observed", v.observed}, {"violated", v.violated},
          {"preconditions_ok", v.preconditions_ok}, {"detail", v.detail},
          {"secondary", secondary}};
}

json slot_json(std::string_view id, const WitnessSlot& slot) {
  json out{{"id", std::string(id)}, {"flag", slot.flag()}};
  if (slot.verdict) out["verdict"] = verdict_json(*slot.verdict);
  if (!slot.error.empty()) out["error"] = slot.error;
  return out;
}

std::vector<double> to_vector(std::span<const double> s) { return {s.begin(), s.end()}; }

std::vector<double> real_diagonal(const ComplexMatrix& m) {
  std::vector<double> out(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) out[static_cast<std::size_t>(i)] = m(i, i).real();
  return out;
}

}  // namespace

json analyze_point(const Config& cfg) {
  const Config resolved = resolve(cfg);
  const Scenario scenario = parse_scenario(*resolved.raw("scenario"));
  ScenarioInstance inst = build_instance(scenario, resolved);
  const PointEvaluation e = evaluate_point(inst.sys, inst.u, inst.epsilon);
  const BipartiteSystem& sys = inst.sys;

  json out;
  out["version"] = kVersion;
  out["scenario"] = to_string(scenario);
  json config = json::object();
  for (const auto& [k, v] : resolved.entries()) config[k] = v;
  out["config"] = config;
  for (const auto& [k, v] : inst.extra) out["extra"][k] = v;

  const StateDiagnostics diag = diagnose(sys);
  json state{{"dims", {sys.dims().cold, sys.dims().hot}},
             {"levels_C", to_vector(sys.cold().levels())},
             {"levels_H", to_vector(sys.hot().levels())},
             {"populations", real_diagonal(sys.rho())},
             {"trace_error", diag.trace_error},
             {"hermiticity_defect", diag.hermiticity_defect},
             {"min_eigenvalue", diag.min_eigenvalue},
             {"cold_marginal_error", diag.cold_marginal_error},
             {"hot_marginal_error", diag.hot_marginal_error},
             {"min_pt_eigenvalue", e.min_pt_eig}};
  if (sys.beta_cold()) state["beta_C"] = *sys.beta_cold();
  if (sys.beta_hot()) state["beta_H"] = *sys.beta_hot();
  if (const auto ppt = ppt_separable(sys)) state["ppt_separable"] = *ppt;
  out["state"] = state;

  out["unitary"] = {{"commutator_norm", e.commutator}, {"energy_preserving", e.energy_preserving}};
  if (e.epsilon) out["unitary"]["epsilon"] = *e.epsilon;
  if (e.energy_mismatch) out["unitary"]["energy_mismatch"] = *e.energy_mismatch;

  out["mh"] = table_json(e.mh);
  out["tpm"] = table_json(e.tpm);
  json negatives = json::array();
  for (const auto& n : e.heat.negative_entries) {
    negatives.push_back({{"initial", n.initial}, {"final", n.final}, {"value", n.value}});
  }
  out["heat"] = {{"Q", e.heat.q},           {"Q_tpm", e.heat.q_tpm},
                 {"Q_back", e.heat.q_back}, {"Q_direct", e.heat.q_direct},
                 {"min_pw", e.min_pw},      {"negativity", e.negativity},
                 {"negative_entries", negatives}};
  if (e.xft) {
    out["xft"] = {{"lhs", e.xft->lhs},
                  {"chi_bar", e.xft->chi_bar},
                  {"avg_delta_i", e.xft->avg_delta_i},
                  {"resonance_ok", e.xft->resonance_ok},
                  {"identity_gap", e.xft->identity_gap()}};
  }
  if (e.j) {
    out["j"] = {{"J", e.j->j}, {"c_norm", e.j->c_norm}, {"q_norm", e.j->q_norm}, {"bound", e.j->bound()}};
  }
  json witnesses = json::array();
  for (auto id : kWitnessColumns) witnesses.push_back(slot_json(id, e.slot(id)));
  out["witnesses"] = witnesses;

  const int tc = static_cast<int>(resolved.integer("probe.target_C", 0));
  const int th = static_cast<int>(resolved.integer("probe.target_H", sys.dims().hot > 1 ? 1 : 0));
  const double eps = resolved.number("probe.epsilon", 0.1);
  const long long shots = resolved.integer("probe.shots", 0);
  const auto seed = static_cast<std::uint64_t>(resolved.integer("probe.seed", 1));
  if (shots < 0) throw ConfigError("probe.shots must be >= 0");

  const ProbeOutcomeStats stats = probe_statistics(sys, inst.u, tc, th, eps);
  const std::vector<double> exact = reconstruct_pw(stats);
  const int target = sys.dims().index(tc, th);
  json row = json::array();
  for (int f = 0; f < sys.dims().joint(); ++f) {
    json entry{{"f_C", f / sys.dims().hot},
               {"f_H", f % sys.dims().hot},
               {"reconstructed", exact[static_cast<std::size_t>(f)]},
               {"mh", e.mh.at(target, f)}};
    row.push_back(entry);
  }
  json probe{{"target_C", tc},
             {"target_H", th},
             {"epsilon", eps},
             {"disturbance", probe_disturbance(sys, tc, th, eps)},
             {"row", row}};
  if (shots > 0) {
    const SampledReconstruction s = sampled_reconstruction(stats, shots, seed);
    for (std::size_t f = 0; f < s.value.size(); ++f) {
      probe["row"][f]["sampled"] = s.value[f];
      probe["row"][f]["std_error"] = s.std_error[f];
    }
    probe["shots"] = shots;
    probe["seed"] = seed;
  }
  out["probe"] = probe;
  return out;
}

}  // namespace qheat::scan
