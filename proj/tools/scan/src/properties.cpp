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

#include "qheat/scan/properties.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

#include "qheat/errors.hpp"
#include "qheat/probe_sim.hpp"
#include "qheat/scan/ensemble.hpp"
#include "qheat/scan/evaluate.hpp"
#include "qheat/witnesses.hpp"

namespace qheat::scan {

namespace {

constexpr double kIdentityTol = 1e-10;
constexpr double kXftTol = 1e-8;
constexpr double kClosedFormTol = 1e-12;
constexpr double kMhFloor = -0.125;

int dimension_for(int trial) { return trial % 2 == 0 ? 2 : 3; }

class Recorder {
 public:
  explicit Recorder(std::string name) { r_.name = std::move(name); }

  void check(double deviation, double tol, int trial) {
    ++r_.checked;
    r_.worst = std::max(r_.worst, deviation);
    if (!(deviation < tol)) fail(trial, "deviation " + std::to_string(deviation));
  }

  void require(bool ok, int trial, const std::string& what) {
    ++r_.checked;
    if (!ok) fail(trial, what);
  }

  PropertyResult result() const { return r_; }

 private:
  void fail(int trial, const std::string& what) {
    if (r_.failed++ == 0) r_.first_failure = "trial " + std::to_string(trial) + ": " + what;
  }

  PropertyResult r_;
};

// Splits a seed into independent per-property streams.
Rng stream(std::uint64_t seed, std::uint64_t property) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(property)};
  return Rng(seq);
}

template <class Body>
PropertyResult run(const std::string& name, std::uint64_t seed, std::uint64_t id, int trials, Body body) {
  Recorder rec(name);
  Rng rng = stream(seed, id);
  for (int trial = 0; trial < trials; ++trial) {
    try {
      body(rng, trial, rec);
    } catch (const std::exception& e) {
      rec.require(false, trial, std::string("exception: ") + e.what());
    }
  }
  return rec.result();
}

double max_entry_gap(const TransitionTable& a, const TransitionTable& b) {
  double worst = 0;
  for (std::size_t k = 0; k < a.entries().size(); ++k)
    worst = std::max(worst, std::abs(a.entries()[k] - b.entries()[k]));
  return worst;
}

}  // namespace

bool PropertySummary::passed() const {
  return std::all_of(results.begin(), results.end(), [](const PropertyResult& r) { return r.passed(); });
}

PropertySummary run_property_suite(std::uint64_t seed, int trials, const PropertyHooks& hooks) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  PropertySummary s;
  s.seed = seed;
  s.trials = trials;
  const MhFunction& mh = hooks.mh;

  s.results.push_back(run("normalization", seed, 1, trials, [&](Rng& rng, int t, Recorder& rec) {
    const Instance inst = random_instance(rng, dimension_for(t));
    rec.check(std::abs(mh(inst.sys, inst.u).sum() - 1.0), kIdentityTol, t);
  }));

  s.results.push_back(run("marginals", seed, 2, trials, [&](Rng& rng, int t, Recorder& rec) {
    const Instance inst = random_instance(rng, dimension_for(t));
    rec.check(marginal_check(mh(inst.sys, inst.u), inst.sys, inst.u).max(), kIdentityTol, t);
  }));

  s.results.push_back(run("mh-range", seed, 3, trials, [&](Rng& rng, int t, Recorder& rec) {
    const Instance inst = random_instance(rng, dimension_for(t));
    const TransitionTable table = mh(inst.sys, inst.u);
    const auto [lo, hi] = std::minmax_element(table.entries().begin(), table.entries().end());
    rec.require(*lo >= kMhFloor - kIdentityTol && *hi <= 1.0 + kIdentityTol, t,
                "entry outside [-1/8, 1]: " + std::to_string(*lo) + ", " + std::to_string(*hi));
  }));

  s.results.push_back(run("tpm-nonnegative", seed, 4, trials, [&](Rng& rng, int t, Recorder& rec) {
    const Instance inst = random_instance(rng, dimension_for(t));
    const TransitionTable tpm = tpm_distribution(inst.sys, inst.u);
    rec.require(tpm.min() >= -kNegligibleWeight, t, "negative TPM entry");
    rec.check(std::abs(tpm.sum() - 1.0), kIdentityTol, t);
  }));

  s.results.push_back(run("heat-consistency", seed, 5, trials, [&](Rng& rng, int t, Recorder& rec) {
    const Instance inst = random_instance(rng, dimension_for(t));
    const TransitionTable table = mh(inst.sys, inst.u);
    const double q = heat_from_table(table);
    rec.check(std::abs(q - heat_direct(inst.sys, inst.u)), kIdentityTol, t);
    const FlowDecomposition flows = decompose_flows(table);
    rec.check(std::abs(flows.back - flows.direct - q), kIdentityTol, t);
  }));

  s.results.push_back(run("xft-identity", seed, 6, trials, [&](Rng& rng, int t, Recorder& rec) {
    const Instance inst = random_instance(rng, dimension_for(t));
    const XftReport x = xft_lhs(mh(inst.sys, inst.u), inst.sys, inst.u);
    rec.check(std::abs(x.identity_gap()), kXftTol, t);
  }));

  s.results.push_back(run("closed-form", seed, 7, trials, [&](Rng& rng, int t, Recorder& rec) {
    const Instance inst = random_instance(rng, dimension_for(t));
    const TransitionTable table = mh(inst.sys, inst.u);
    const TransitionTable tpm = tpm_distribution(inst.sys, inst.u);
    const DimPair dims = inst.sys.dims();
    double worst = 0;
    for (const ExchangeEntry& e : qudit_closed_form_pw(inst.sys, inst.rotations)) {
      const int i = dims.index(e.n, e.m), f = dims.index(e.m, e.n);
      worst = std::max({worst, std::abs(e.mh - table.at(i, f)), std::abs(e.tpm - tpm.at(i, f))});
    }
    rec.check(worst, kClosedFormTol, t);
    const double dq = qudit_closed_form_delta_q(inst.sys, inst.rotations);
    rec.check(std::abs(dq - (heat_from_table(table) - heat_from_table(tpm))), kClosedFormTol, t);
    rec.require(std::abs(dq) <= delta_q_max(inst.sys) + kClosedFormTol, t, "|dQ| above its maximum");
  }));

  s.results.push_back(run("mh-equals-tpm-without-coherence", seed, 8, trials, [&](Rng& rng, int t, Recorder& rec) {
    const Instance inst = random_instance(rng, dimension_for(t));
    const BipartiteSystem flat = dephase(inst.sys, DephasingBasis::LocalEnergy);
    rec.check(max_entry_gap(mh(flat, inst.u), tpm_distribution(inst.sys, inst.u)), kIdentityTol, t);
  }));

  s.results.push_back(run("j-bound", seed, 9, trials, [&](Rng& rng, int t, Recorder& rec) {
    const Instance inst = random_instance(rng, dimension_for(t));
    const JReport j = j_term(inst.sys, inst.u);
    rec.require(std::abs(j.j) <= j.bound() + kIdentityTol, t, "|J| above ||c|| + ||q||");
  }));

  s.results.push_back(run("probe-exactness", seed, 10, trials, [&](Rng& rng, int t, Recorder& rec) {
    const Instance inst = random_instance(rng, dimension_for(t));
    const TransitionTable table = mh(inst.sys, inst.u);
    const DimPair dims = inst.sys.dims();
    std::uniform_int_distribution<int> pick_c(0, dims.cold - 1), pick_h(0, dims.hot - 1);
    std::uniform_real_distribution<double> pick_eps(0.01, std::numbers::pi / 2 - 0.01);
    const int tc = pick_c(rng), th = pick_h(rng);
    const std::vector<double> rec_row =
        reconstruct_pw(probe_statistics(inst.sys, inst.u, tc, th, pick_eps(rng)));
    double worst = 0;
    for (int f = 0; f < dims.joint(); ++f)
      worst = std::max(worst, std::abs(rec_row[static_cast<std::size_t>(f)] - table.at(dims.index(tc, th), f)));
    rec.check(worst, kIdentityTol, t);
  }));

  s.results.push_back(run("witness-soundness", seed, 11, trials, [&](Rng& rng, int t, Recorder& rec) {
    // Weak coherences give a usable share of nonnegative tables.
    EnsembleOptions opt;
    opt.max_eta = 0.3;
    for (int attempt = 0; attempt < 1000; ++attempt) {
      const Instance inst = random_instance(rng, dimension_for(t), opt);
      if (mh(inst.sys, inst.u).min() < 0) continue;
      const PointEvaluation e = evaluate_point(inst.sys, inst.u);
      std::string hit;
      for (auto id : kWitnessColumns)
        if (e.slot(id).violated()) hit += std::string(id) + " ";
      rec.require(hit.empty(), t, "violated on a nonnegative table: " + hit);
      return;
    }
    rec.require(false, t, "no nonnegative instance found");
  }));

  return s;
}

void print_property_summary(std::ostream& os, const PropertySummary& summary) {
  char line[256];
  std::snprintf(line, sizeof line, "property suite: seed=%llu trials=%d\n",
                static_cast<unsigned long long>(summary.seed), summary.trials);
  os << line;
  for (const PropertyResult& r : summary.results) {
    std::snprintf(line, sizeof line, "%-34s %-4s checked=%-6d failed=%-6d worst=%.3g\n", r.name.c_str(),
                  r.passed() ? "ok" : "FAIL", r.checked, r.failed, r.worst);
    os << line;
    if (!r.first_failure.empty()) os << "    first failure: " << r.first_failure << '\n';
  }
  os << (summary.passed() ? "all properties passed\n" : "property suite FAILED\n");
}

}  // namespace qheat::scan
