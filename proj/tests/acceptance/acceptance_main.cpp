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

// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "qheat/dynamics.hpp"
#include "qheat/fluctuations.hpp"
#include "qheat/probe_sim.hpp"
#include "qheat/scan/config.hpp"
#include "qheat/scan/ensemble.hpp"
#include "qheat/scan/evaluate.hpp"
#include "qheat/scan/sweep.hpp"
#include "qheat/states.hpp"
#include "qheat/witnesses.hpp"

namespace {

using namespace qheat;
using scan::Rng;

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    if (pass) detail = what;
    pass = false;
  }
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

scan::SweepResult sweep_file(const std::string& name) {
  const auto cfg = scan::Config::load(std::string(QHEAT_CONFIG_DIR) + "/" + name);
  return scan::run_sweep(scan::parse_sweep_spec(cfg));
}

// Random resonant instances shared by the ensemble criteria.
struct Ensemble {
  std::vector<scan::Instance> qubits;
  std::vector<scan::Instance> qutrits;
};

const Ensemble& ensemble() {
  static const Ensemble e = [] {
    Ensemble out;
    Rng rng(1001);
    for (int k = 0; k < 500; ++k) out.qubits.push_back(scan::random_instance(rng, 2));
    for (int k = 0; k < 200; ++k) out.qutrits.push_back(scan::random_instance(rng, 3));
    return out;
  }();
  return e;
}

template <class F>
void for_each_instance(F f) {
  for (const auto& i : ensemble().qubits) f(i);
  for (const auto& i : ensemble().qutrits) f(i);
}

Outcome separability() {
  Outcome o;
  ExperimentStateParams p;
  p.beta_cold = 1.13;
  p.beta_hot = 0.9618;
  p.gamma = -0.19;
  p.gap_cold = p.gap_hot = 1.0;
  const BipartiteSystem sys = experiment_state(p);
  const double m = min_pt_eigenvalue(sys);
  o.require(m >= 0.0009 && m <= 0.0019, fmt("min PT eigenvalue %.6g outside [0.0009, 0.0019]", m));
  o.require(ppt_separable(sys).value_or(false), "experiment state not reported separable");
  if (o.pass) o.detail = fmt("min PT eigenvalue %.6f", m);
  return o;
}

Outcome xft_identity() {
  Outcome o;
  double worst = 0;
  int n = 0;
  for_each_instance([&](const scan::Instance& inst) {
    const XftReport x = xft_lhs(mh_distribution(inst.sys, inst.u), inst.sys, inst.u);
    worst = std::max(worst, std::abs(x.identity_gap()));
    ++n;
  });
  o.require(ensemble().qubits.size() >= 500 && ensemble().qutrits.size() >= 200, "ensemble too small");
  o.require(worst < 1e-8, fmt("max |lhs - (1 + chi)| = %.3g", worst));
  if (o.pass) o.detail = fmt("%d instances (500 d=2, 200 d=3), max gap %.2g", n, worst);
  return o;
}

Outcome marginals() {
  Outcome o;
  double worst = 0;
  for_each_instance([&](const scan::Instance& inst) {
    worst = std::max(worst, marginal_check(mh_distribution(inst.sys, inst.u), inst.sys, inst.u).max());
  });
  o.require(worst < 1e-10, fmt("max marginal deviation %.3g", worst));
  if (o.pass) o.detail = fmt("max deviation %.2g over both marginals", worst);
  return o;
}

Outcome range_and_normalization() {
  Outcome o;
  double worst_sum = 0, lowest = 1;
  for_each_instance([&](const scan::Instance& inst) {
    const TransitionTable t = mh_distribution(inst.sys, inst.u);
    worst_sum = std::max(worst_sum, std::abs(t.sum() - 1.0));
    lowest = std::min(lowest, t.min());
  });
  o.require(worst_sum < 1e-10, fmt("max |sum - 1| = %.3g", worst_sum));
  o.require(lowest >= -0.125 - 1e-10, fmt("entry %.6g below -1/8", lowest));
  if (o.pass) o.detail = fmt("max |sum - 1| %.2g, lowest entry %.4f", worst_sum, lowest);
  return o;
}

Outcome closed_forms() {
  Outcome o;
  long points = 0;
  double worst = 0;
  auto track = [&](double a, double b) { worst = std::max(worst, std::abs(a - b)); };

  for (double bc : {0.4, 1.13, 2.0}) {
    for (double bh : {0.1, 0.5, 0.9618}) {
      if (bh >= bc) continue;
      const TwoQubitBounds b = two_qubit_population_bounds(bc, bh);
      for (double pf : {0.1, 0.35, 0.6, 0.9}) {
        TwoQubitParams p{bc, bh, 1.0, b.p00_min + pf * (b.p00_max - b.p00_min), 0.0, 0.0};
        const double cap = two_qubit_eta_cap(p);
        for (double ef : {-0.95, -0.4, 0.0, 0.5, 0.95}) {
          for (double xi : {0.0, 1.0, -2.5}) {
            p.eta = ef * cap;
            p.xi = xi;
            const BipartiteSystem sys = two_qubit_state(p);
            for (int k = 0; k < 8; ++k) {
              const double th = k * kPi / 7;
              for (double lam : {0.0, 0.8, -2.0}) {
                for (double phi : {0.0, -1.7, 3.0}) {
                  const ComplexMatrix u = two_qubit_unitary(th, 0.4, lam, phi).matrix;
                  const TwoQubitClosedForm cf = two_qubit_closed_form(p, th, lam, phi);
                  const TransitionTable mh = mh_distribution(sys, u);
                  const TransitionTable tpm = tpm_distribution(sys, u);
                  track(cf.mh_01_10, mh.at(1, 2));
                  track(cf.mh_10_01, mh.at(2, 1));
                  track(cf.tpm_01_10, tpm.at(1, 2));
                  track(cf.tpm_10_01, tpm.at(2, 1));
                  track(cf.q, heat_from_table(mh));
                  track(cf.q_tpm, heat_from_table(tpm));
                  ++points;
                }
              }
            }
          }
        }
      }
    }
  }

  Rng rng(1005);
  for (int d : {2, 3, 4}) {
    for (int trial = 0; trial < 1000; ++trial) {
      const scan::Instance inst = scan::random_instance(rng, d);
      const TransitionTable mh = mh_distribution(inst.sys, inst.u);
      const TransitionTable tpm = tpm_distribution(inst.sys, inst.u);
      for (const ExchangeEntry& e : qudit_closed_form_pw(inst.sys, inst.rotations)) {
        track(e.mh, mh(e.n, e.m, e.m, e.n));
        track(e.tpm, tpm(e.n, e.m, e.m, e.n));
      }
      track(qudit_closed_form_delta_q(inst.sys, inst.rotations), heat_from_table(mh) - heat_from_table(tpm));
      // The maximum is attained at a quarter turn with phases cancelling the coherences.
      std::vector<ManifoldRotation> best;
      for (int n = 0; n < d; ++n)
        for (int m = n + 1; m < d; ++m)
          best.push_back({n, m, kPi / 4, kPi - std::arg(inst.sys.rho()(n * d + m, m * d + n)), 0.0, 0.0});
      const ComplexMatrix u = qudit_energy_preserving(inst.sys.cold(), best).matrix;
      track(delta_q_max(inst.sys),
            heat_from_table(mh_distribution(inst.sys, u)) - heat_from_table(tpm_distribution(inst.sys, u)));
      ++points;
    }
  }
  o.require(points >= 10000, fmt("only %ld grid points", points));
  o.require(worst < 1e-12, fmt("max closed-form deviation %.3g", worst));
  if (o.pass) o.detail = fmt("%ld points, max deviation %.2g", points, worst);
  return o;
}

Outcome soundness() {
  Outcome o;
  Rng rng(1006);
  scan::EnsembleOptions opt;
  opt.max_eta = 0.5;
  std::string summary;
  for (int d : {2, 3}) {
    const std::vector<std::string> required =
        d == 2 ? std::vector<std::string>{"T1", "T2", "T3", "I4", "T4-lower", "T4-upper"}
               : std::vector<std::string>{"T3", "I4", "T4-lower", "T4-upper"};
    int kept = 0, evaluated = 0;
    for (int draw = 0; draw < 100000 && kept < 500; ++draw) {
      const scan::Instance inst = scan::random_instance(rng, d, opt);
      if (mh_distribution(inst.sys, inst.u).min() < 0) continue;
      ++kept;
      const scan::PointEvaluation e = scan::evaluate_point(inst.sys, inst.u);
      for (const auto& id : required) {
        const scan::WitnessSlot& s = e.slot(id);
        if (s.state == scan::SlotState::Evaluated) ++evaluated;
        o.require(s.state != scan::SlotState::Error, id + " errored: " + s.error);
        o.require(!s.violated(), fmt("%s violated on a nonnegative d=%d table", id.c_str(), d));
      }
    }
    o.require(kept >= 500, fmt("only %d nonnegative d=%d instances", kept, d));
    summary += fmt("d=%d: %d instances, %d verdicts; ", d, kept, evaluated);
  }
  if (o.pass) o.detail = summary + "no violations";
  return o;
}

// Maximal runs of consecutive cells satisfying `pred`, as [begin, end).
std::vector<std::pair<std::size_t, std::size_t>> runs(const std::vector<scan::CellRecord>& cells,
                                                       const std::function<bool(const scan::CellRecord&)>& pred) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t k = 0; k < cells.size();) {
    if (!pred(cells[k])) {
      ++k;
      continue;
    }
    std::size_t end = k;
    while (end < cells.size() && pred(cells[end])) ++end;
    out.emplace_back(k, end);
    k = end;
  }
  return out;
}

bool negative(const scan::CellRecord& c) { return c.eval && c.eval->negativity; }
bool violates(const scan::CellRecord& c, const char* id) { return c.eval && c.eval->slot(id).violated(); }

Outcome sweep_regions() {
  Outcome o;
  // (a) interaction-time curves of the experiment.
  const scan::SweepResult a = sweep_file("experiment_time.cfg");
  double max_tpm = -1;
  int t1 = 0, backflow_without_negativity = 0;
  for (const auto& c : a.cells) {
    o.require(c.status == "ok", "experiment-time cell not ok: " + c.detail);
    if (!c.eval) continue;
    max_tpm = std::max(max_tpm, c.eval->heat.q_tpm);
    if (c.eval->heat.q > 0 && !c.eval->negativity) ++backflow_without_negativity;
    if (violates(c, "T1")) {
      ++t1;
      o.require(negative(c), "(a) T1 violation outside negativity");
    }
  }
  o.require(max_tpm <= 1e-12, fmt("(a) Q_tpm reaches %.3g > 0", max_tpm));
  o.require(t1 > 0, "(a) no T1 violation");
  // A backflow interval contained in a negativity interval.
  std::size_t contained = 0;
  for (const auto& [b, e] : runs(a.cells, negative)) {
    std::vector<scan::CellRecord> inside(a.cells.begin() + static_cast<long>(b), a.cells.begin() + static_cast<long>(e));
    for (const auto& [bb, be] : runs(inside, [](const scan::CellRecord& c) { return c.eval->heat.q > 0; }))
      contained = std::max(contained, be - bb);
  }
  o.require(contained > 0, "(a) no backflow interval inside a negativity interval");

  // (b) (theta, eta) plane.
  const scan::SweepResult b = sweep_file("qubit_theta_eta.cfg");
  int neg_b = 0, t1_b = 0, t1_line = 0;
  for (const auto& c : b.cells) {
    if (negative(c)) ++neg_b;
    if (!violates(c, "T1")) continue;
    ++t1_b;
    o.require(negative(c), "(b) T1 violation outside negativity");
    if (std::abs(c.axis_values[1] + 0.19) < 1e-9) ++t1_line;
  }
  o.require(t1_b > 0 && t1_b < neg_b, fmt("(b) T1 region %d not strictly inside negativity %d", t1_b, neg_b));
  o.require(t1_line > 0, "(b) T1 region misses eta = -0.19");

  // (c) qutrit angle grids.
  const scan::SweepResult c3 = sweep_file("qutrit_theta_grid.cfg");
  int t3 = 0, t4 = 0;
  for (const auto& c : c3.cells) {
    if (violates(c, "T3")) {
      ++t3;
      o.require(negative(c), "(c) T3 violation outside negativity");
    }
    if (violates(c, "T4-lower") || violates(c, "T4-upper")) {
      ++t4;
      o.require(negative(c), "(c) T4 violation outside negativity");
    }
  }
  o.require(t3 > 0 && t4 > 0, "(c) empty T3 or T4 region");
  const scan::SweepResult c1 = sweep_file("qutrit_two_sided_eta100.cfg");
  int lower = 0, upper = 0;
  for (const auto& c : c1.cells) {
    if (violates(c, "T4-lower")) ++lower;
    if (violates(c, "T4-upper")) ++upper;
    if (c.eval && c.eval->any_violation()) o.require(negative(c), "(c) eta=1 violation outside negativity");
  }
  o.require(lower > 0 && upper > 0, fmt("(c) eta=1 T4-lower %d, T4-upper %d", lower, upper));
  if (o.pass) {
    o.detail = fmt("(a) %zu-cell backflow run inside negativity, %d T1 cells, max Q_tpm %.2g, "
                   "%d backflow cells without negativity; (b) T1 %d in negativity %d, %d on eta=-0.19; "
                   "(c) T3 %d, T4 %d, eta=1 lower %d upper %d",
                   contained, t1, max_tpm, backflow_without_negativity, t1_b, neg_b, t1_line, t3, t4, lower,
                   upper);
  }
  return o;
}

Outcome probe_exactness() {
  Outcome o;
  double worst = 0;
  int rows = 0;
  for_each_instance([&](const scan::Instance& inst) {
    const TransitionTable mh = mh_distribution(inst.sys, inst.u);
    const DimPair dims = inst.sys.dims();
    for (double eps : {0.05, 0.2, kPi / 4}) {
      for (int tc = 0; tc < dims.cold; ++tc) {
        for (int th = 0; th < dims.hot; ++th) {
          const auto row = reconstruct_pw(probe_statistics(inst.sys, inst.u, tc, th, eps));
          for (int f = 0; f < dims.joint(); ++f)
            worst = std::max(worst, std::abs(row[static_cast<std::size_t>(f)] - mh.at(dims.index(tc, th), f)));
          ++rows;
        }
      }
    }
  });
  o.require(worst < 1e-10, fmt("max reconstruction error %.3g", worst));

  ExperimentStateParams p;
  p.beta_cold = 1.13;
  p.beta_hot = 0.9618;
  p.gamma = -0.19;
  const BipartiteSystem sys = experiment_state(p);
  const ComplexMatrix u = experiment_unitary(215.1, 0.0005, 1.0).matrix;
  const TransitionTable mh = mh_distribution(sys, u);
  o.require(mh(0, 1, 1, 0) < 0, "probe target entry is not negative");
  double worst_z = 0;
  for (double eps : {0.2, kPi / 4}) {
    const ProbeOutcomeStats stats = probe_statistics(sys, u, 0, 1, eps);
    const SampledReconstruction s = sampled_reconstruction(stats, 1000000, 2024);
    for (std::size_t f = 0; f < s.value.size(); ++f) {
      const double exact = mh.at(1, static_cast<int>(f));
      const double dev = std::abs(s.value[f] - exact);
      if (s.std_error[f] == 0) {
        o.require(dev == 0, "zero standard error with nonzero deviation");
        continue;
      }
      worst_z = std::max(worst_z, dev / s.std_error[f]);
    }
  }
  o.require(worst_z < 5, fmt("sampled value %.2f standard errors from exact", worst_z));
  if (o.pass) o.detail = fmt("%d rows, max error %.2g; 1e6 shots within %.2f sigma", rows, worst, worst_z);
  return o;
}

Outcome nonideal_map() {
  Outcome o;
  const scan::SweepResult r = sweep_file("nonideal_eps_delta.cfg");
  int t2 = 0;
  for (const auto& c : r.cells) {
    if (!violates(c, "T2")) continue;
    ++t2;
    o.require(negative(c), "T2 violation outside negativity");
  }
  o.require(t2 > 0, "empty T2 region");

  // At eps = Delta = 0 the nonideal bound is the ideal one.
  double worst = 0;
  int agree = 0;
  for (double bc : {0.5, 1.13, 2.0}) {
    for (double bh : {0.1, 0.4, 0.9618}) {
      if (bh >= bc) continue;
      for (double q : {-0.3, -0.01, 0.0, 0.02, 0.17}) {
        for (double qt : {-0.2, -0.004, 0.0}) {
          const WitnessVerdict v1 = inequality_t1(q, qt, bc, bh);
          const WitnessVerdict v2 = inequality_t2(q, qt, bc, bh, 1.0, 1.0, 0.0);
          if (!v2.preconditions_ok) continue;
          worst = std::max(worst, std::abs(v1.bound - v2.bound));
          o.require(v1.violated == v2.violated, "T1 and T2 disagree at eps = Delta = 0");
          ++agree;
        }
      }
    }
  }
  const scan::CellRecord& origin = r.cells.front();
  o.require(origin.axis_values[0] == 0 && origin.axis_values[1] == 0, "sweep does not start at eps = Delta = 0");
  if (origin.eval) {
    const auto& s1 = origin.eval->slot("T1");
    const auto& s2 = origin.eval->slot("T2");
    o.require(s1.verdict && s2.verdict, "T1 or T2 not evaluated at eps = Delta = 0");
    if (s1.verdict && s2.verdict) {
      worst = std::max(worst, std::abs(s1.verdict->bound - s2.verdict->bound));
      o.require(s1.flag() == s2.flag(), "T1 and T2 flags differ at the sweep origin");
    }
  }
  o.require(worst < 1e-12, fmt("T2 - T1 bound gap %.3g", worst));
  if (o.pass) o.detail = fmt("%d T2-violation cells of %zu; reduction gap %.2g over %d cases", t2, r.cells.size(), worst, agree);
  return o;
}

Outcome strong_backflow_silent() {
  Outcome o;
  auto cfg = scan::Config::load(std::string(QHEAT_CONFIG_DIR) + "/experiment_time.cfg");
  cfg.apply_override("sweep.axis1.max=0.02");
  cfg.apply_override("sweep.axis1.n=2001");
  const scan::SweepResult r = scan::run_sweep(scan::parse_sweep_spec(cfg));
  int evaluated = 0;
  double max_q = -1, max_fraction = 0;
  for (const auto& c : r.cells) {
    if (!c.eval) {
      o.require(false, "cell not evaluated: " + c.detail);
      continue;
    }
    const auto& s = c.eval->slot("strong-backflow");
    if (s.state == scan::SlotState::Evaluated) ++evaluated;
    o.require(!s.violated(), fmt("strong backflow fires at t = %.6g", c.axis_values[0]));
    max_q = std::max(max_q, c.eval->heat.q);
    max_fraction = std::max(max_fraction, c.extra.back().second);
  }
  o.require(evaluated == static_cast<int>(r.cells.size()), "strong-backflow not evaluated on every cell");
  o.require(max_fraction > 1, "time grid shorter than a full rotation period");
  const double threshold = std::log(2.0) / (1.13 - 0.9618);
  if (o.pass) o.detail = fmt("%d times over %.2f periods, max Q %.4f vs threshold %.3f", evaluated, max_fraction, max_q, threshold);
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, Outcome (*)()>> criteria{
      {"separability number", separability},
      {"XFT identity", xft_identity},
      {"marginal property", marginals},
      {"range and normalization", range_and_normalization},
      {"closed-form equivalence", closed_forms},
      {"witness soundness", soundness},
      {"sweep-region reproduction", sweep_regions},
      {"probe-scheme exactness", probe_exactness},
      {"nonideal tolerance map", nonideal_map},
      {"strong backflow silent on experiment", strong_backflow_silent},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failed;
    std::printf("%s %2zu %-38s %6.2fs  %s\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].first, secs,
                o.detail.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
