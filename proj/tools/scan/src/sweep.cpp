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

#include "qheat/scan/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <thread>

#include "qheat/errors.hpp"
#include "qheat/format.hpp"

namespace qheat::scan {

namespace {

const std::vector<std::string> kCommonColumns{
    "status", "Q", "Q_tpm", "Q_back", "Q_direct", "min_pw", "negativity", "min_pt_eig",
    "commutator_norm", "epsilon"};

void check_parameter_values(Scenario s, const Config& resolved) {
  for (const auto& [key, value] : resolved.entries()) {
    if (!is_parameter_key(s, key)) continue;
    if (key == "state.levels") resolved.numbers(key);
    else if (key == "unitary.theta12_follows_theta02") resolved.flag(key, true);
    else resolved.number(key);
  }
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string sanitize(std::string s) {
  std::replace(s.begin(), s.end(), ',', ';');
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

std::string num(double v) { return std::isnan(v) ? "" : format_double(v); }

std::string column_value(const CellRecord& cell, const std::string& column) {
  if (column == "status") return cell.status;
  if (column == "detail") return sanitize(cell.detail);
  for (const auto& [name, v] : cell.extra)
    if (name == column) return num(v);
  if (!cell.eval) return "";
  const PointEvaluation& e = *cell.eval;
  if (column == "Q") return num(e.heat.q);
  if (column == "Q_tpm") return num(e.heat.q_tpm);
  if (column == "Q_back") return num(e.heat.q_back);
  if (column == "Q_direct") return num(e.heat.q_direct);
  if (column == "min_pw") return num(e.min_pw);
  if (column == "negativity") return e.negativity ? "1" : "0";
  if (column == "min_pt_eig") return num(e.min_pt_eig);
  if (column == "commutator_norm") return num(e.commutator);
  if (column == "epsilon") return e.epsilon ? num(*e.epsilon) : "";
  for (auto id : kWitnessColumns) {
    const WitnessSlot& slot = e.slot(id);
    if (column == id) return slot.flag();
    if (column == std::string(id) + "_bound") return slot.verdict ? num(slot.verdict->bound) : "";
  }
  return "";
}

}  // namespace

std::vector<std::string> available_columns(Scenario s) {
  std::vector<std::string> out = extra_columns(s);
  out.insert(out.end(), kCommonColumns.begin(), kCommonColumns.end());
  for (auto id : kWitnessColumns) out.emplace_back(id);
  for (auto id : kWitnessColumns) out.push_back(std::string(id) + "_bound");
  out.emplace_back("detail");
  return out;
}

SweepSpec parse_sweep_spec(const Config& cfg) {
  SweepSpec spec;
  spec.resolved = resolve(cfg);
  spec.scenario = parse_scenario(*spec.resolved.raw("scenario"));
  check_parameter_values(spec.scenario, spec.resolved);
  for (int k = 1; k <= 2; ++k) {
    const std::string prefix = "sweep.axis" + std::to_string(k) + ".";
    const bool any = spec.resolved.has(prefix + "name") || spec.resolved.has(prefix + "min") ||
                     spec.resolved.has(prefix + "max") || spec.resolved.has(prefix + "n");
    if (!any) continue;
    if (k == 2 && spec.axes.empty()) throw ConfigError("sweep.axis2 given without sweep.axis1");
    Axis axis;
    axis.key = spec.resolved.text(prefix + "name", "");
    if (!is_parameter_key(spec.scenario, axis.key) || axis.key == "state.levels" ||
        axis.key == "unitary.theta12_follows_theta02") {
      throw ConfigError(prefix + "name: '" + axis.key + "' is not a numeric parameter of " +
                        to_string(spec.scenario));
    }
    axis.min = spec.resolved.number(prefix + "min");
    axis.max = spec.resolved.number(prefix + "max");
    const long long n = spec.resolved.integer(prefix + "n", -1);
    if (n < 2 || n > 1000000) throw ConfigError(prefix + "n must be an integer >= 2");
    axis.n = static_cast<int>(n);
    if (!std::isfinite(axis.min) || !std::isfinite(axis.max)) {
      throw ConfigError(prefix + "min/max must be finite");
    }
    spec.axes.push_back(axis);
  }
  if (spec.axes.empty()) throw ConfigError("a sweep needs sweep.axis1.{name,min,max,n}");
  if (spec.axes.size() == 2 && spec.axes[0].key == spec.axes[1].key) {
    throw ConfigError("sweep axes must differ");
  }

  const std::vector<std::string> all = available_columns(spec.scenario);
  if (const auto cols = spec.resolved.raw("output.columns")) {
    std::string_view rest = *cols;
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      std::string name(rest.substr(0, comma));
      name.erase(0, name.find_first_not_of(' '));
      name.erase(name.find_last_not_of(' ') + 1);
      if (std::find(all.begin(), all.end(), name) == all.end()) {
        throw ConfigError("output.columns: unknown column '" + name + "'");
      }
      spec.columns.push_back(name);
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
  } else {
    spec.columns = all;
  }
  return spec;
}

unsigned default_thread_count() {
  if (const char* env = std::getenv("QHEAT_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

CellRecord evaluate_cell(Scenario scenario, const Config& resolved) {
  CellRecord cell;
  try {
    ScenarioInstance inst = build_instance(scenario, resolved);
    cell.extra = inst.extra;
    cell.eval = evaluate_point(inst.sys, inst.u, inst.epsilon);
  } catch (const InfeasibleParameters& e) {
    cell.status = "infeasible";
    cell.detail = e.constraint();
  } catch (const DegenerateSpectrum& e) {
    cell.status = "infeasible";
    cell.detail = e.what();
  } catch (const PreconditionViolated& e) {
    cell.status = "precondition";
    cell.detail = e.what();
  } catch (const DivergentQuantity& e) {
    cell.status = "divergent";
    cell.detail = e.what();
  } catch (const Error& e) {
    cell.status = "error";
    cell.detail = e.what();
  }
  if (cell.eval) {
    for (auto id : kWitnessColumns) {
      const WitnessSlot& s = cell.eval->slot(id);
      std::string note = s.error;
      if (note.empty() && s.state == SlotState::PreconditionFailed && s.verdict) note = s.verdict->detail;
      if (!note.empty()) {
        if (!cell.detail.empty()) cell.detail += " | ";
        cell.detail += std::string(id) + ": " + note;
      }
    }
  }
  return cell;
}

SweepResult run_sweep(const SweepSpec& spec, unsigned threads) {
  SweepResult result;
  result.spec = spec;
  result.timestamp = utc_timestamp();
  const int n1 = spec.axes[0].n;
  const int n2 = spec.axes.size() > 1 ? spec.axes[1].n : 1;
  const std::size_t total = static_cast<std::size_t>(n1) * static_cast<std::size_t>(n2);
  result.cells.resize(total);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t idx = next++; idx < total; idx = next++) {
      Config cfg = spec.resolved;
      std::vector<double> values;
      const int k1 = static_cast<int>(idx / static_cast<std::size_t>(n2));
      const int k2 = static_cast<int>(idx % static_cast<std::size_t>(n2));
      values.push_back(spec.axes[0].value(k1));
      if (spec.axes.size() > 1) values.push_back(spec.axes[1].value(k2));
      for (std::size_t a = 0; a < values.size(); ++a) cfg.set(spec.axes[a].key, format_double(values[a]));
      CellRecord cell = evaluate_cell(spec.scenario, cfg);
      cell.axis_values = std::move(values);
      result.cells[idx] = std::move(cell);
    }
  };
  const unsigned n_threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(total)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  result.infeasible = static_cast<std::size_t>(std::count_if(
      result.cells.begin(), result.cells.end(), [](const CellRecord& c) { return c.status != "ok"; }));
  return result;
}

void write_sweep_csv(std::ostream& os, const SweepResult& result) {
  const SweepSpec& spec = result.spec;
  os << "# qheat " << kVersion << '\n';
  os << "# generated: " << result.timestamp << '\n';
  os << "# scenario: " << to_string(spec.scenario) << '\n';
  os << "# cells: " << result.cells.size() << '\n';
  os << "# infeasible: " << result.infeasible << '\n';
  for (const auto& [key, value] : spec.resolved.entries()) os << "# config: " << key << " = " << value << '\n';

  bool first = true;
  for (const Axis& a : spec.axes) {
    os << (first ? "" : ",") << a.key;
    first = false;
  }
  for (const auto& c : spec.columns) os << ',' << c;
  os << '\n';
  for (const CellRecord& cell : result.cells) {
    for (std::size_t a = 0; a < cell.axis_values.size(); ++a)
      os << (a ? "," : "") << format_double(cell.axis_values[a]);
    for (const auto& c : spec.columns) os << ',' << column_value(cell, c);
    os << '\n';
  }
}

}  // namespace qheat::scan
