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

#include "qheat/scan/evaluate.hpp"

#include <algorithm>
#include <cmath>

#include "qheat/errors.hpp"

namespace qheat::scan {

namespace {

std::size_t column_index(std::string_view id) {
  for (std::size_t k = 0; k < kWitnessColumns.size(); ++k)
    if (kWitnessColumns[k] == id) return k;
  throw std::out_of_range("unknown witness column");
}

template <class F>
void fill(WitnessSlot& slot, F&& compute) {
  try {
    slot.verdict = compute();
    slot.state = slot.verdict->preconditions_ok ? SlotState::Evaluated : SlotState::PreconditionFailed;
  } catch (const PreconditionViolated& e) {
    slot.state = SlotState::PreconditionFailed;
    slot.error = e.what();
  } catch (const Error& e) {
    slot.state = SlotState::Error;
    slot.error = e.what();
  }
}

double largest_mismatch(const TransitionTable& t) {
  const int d = t.dims().joint();
  double worst = 0;
  for (int i = 0; i < d; ++i)
    for (int f = 0; f < d; ++f)
      if (std::abs(t.at(i, f)) > kNegligibleWeight)
        worst = std::max(worst, std::abs(t.delta_e_cold(i, f) + t.delta_e_hot(i, f)));
  return worst;
}

}  // namespace

std::string WitnessSlot::flag() const {
  switch (state) {
    case SlotState::NotApplicable: return "na";
    case SlotState::PreconditionFailed: return "pre";
    case SlotState::Error: return "err";
    case SlotState::Evaluated: return verdict->violated ? "1" : "0";
  }
  return "na";
}

const WitnessSlot& PointEvaluation::slot(std::string_view id) const {
  return witnesses[column_index(id)];
}

bool PointEvaluation::any_violation() const {
  return std::any_of(witnesses.begin(), witnesses.end(),
                     [](const WitnessSlot& s) { return s.violated(); });
}

PointEvaluation evaluate_point(const BipartiteSystem& sys, const ComplexMatrix& u,
                               std::optional<double> epsilon) {
  PointEvaluation ev{mh_distribution(sys, u), tpm_distribution(sys, u), {}, 0, false, 0, 0,
                     epsilon, false, {}, {}, {}, {}};
  ev.heat = heat_report(sys, u);
  ev.min_pw = ev.mh.min();
  ev.negativity = ev.min_pw < -kNegativityThreshold;
  ev.min_pt_eig = min_pt_eigenvalue(sys);
  ev.commutator = commutator_norm(u, sys.total_hamiltonian());
  ev.energy_preserving = ev.commutator < kUnitarityTolerance;
  if (ev.energy_preserving && !ev.epsilon) ev.epsilon = 0.0;
  ev.energy_mismatch = largest_mismatch(ev.mh);

  const DimPair dims = sys.dims();
  const bool qubits = dims.cold == 2 && dims.hot == 2;
  const bool equal_spectra = sys.cold() == sys.hot();
  const double q = ev.heat.q, q_tpm = ev.heat.q_tpm;
  auto& w = ev.witnesses;

  if (!sys.beta_cold() || !sys.beta_hot()) return ev;
  const double bc = *sys.beta_cold(), bh = *sys.beta_hot();

  if (qubits && equal_spectra && ev.energy_preserving) {
    fill(w[column_index("T1")], [&] { return inequality_t1(q, q_tpm, bc, bh, sys.cold()[1]); });
  }
  if (qubits && ev.epsilon) {
    fill(w[column_index("T2")], [&] {
      return inequality_t2(q, q_tpm, bc, bh, sys.cold()[1], sys.hot()[1], *ev.epsilon);
    });
  }
  fill(w[column_index("T3")], [&] {
    const std::optional<double> work =
        ev.energy_preserving ? std::nullopt : std::optional<double>(*ev.energy_mismatch);
    ev.xft = xft_lhs(ev.mh, sys, u, work);
    return inequality_t3(q, *ev.xft, bc, bh, work);
  });
  if (ev.energy_preserving) {
    fill(w[column_index("I4")], [&] {
      ev.j = j_term(sys, u);
      return inequality_i4(q, ev.j->j, bc, bh);
    });
    if (equal_spectra && sys.cold().nondegenerate_bohr()) {
      try {
        const T4Verdicts t4 = inequality_t4(q, ev.tpm);
        fill(w[column_index("T4-lower")], [&] { return t4.lower; });
        fill(w[column_index("T4-upper")], [&] { return t4.upper; });
      } catch (const Error& e) {
        for (auto id : {"T4-lower", "T4-upper"}) {
          w[column_index(id)].state = SlotState::Error;
          w[column_index(id)].error = e.what();
        }
      }
    }
  }
  fill(w[column_index("strong-backflow")],
       [&] { return strong_backflow(q, bc, bh, std::min(dims.cold, dims.hot)); });
  return ev;
}

}  // namespace qheat::scan
