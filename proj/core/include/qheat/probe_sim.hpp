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

// Qubit-probe weak measurement of the initial energy, followed by the
// exchange and a projective energy measurement. The probe statistics
// reconstruct one row of the Margenau-Hill table exactly at any coupling.

#include <cstdint>
#include <ostream>
#include <utility>
#include <vector>

#include "qheat/fluctuations.hpp"
#include "qheat/states.hpp"

namespace qheat {

struct ProbeOutcomeStats {
  EnergySpectrum cold;
  EnergySpectrum hot;
  int target_cold = 0;
  int target_hot = 0;
  double epsilon = 0;
  // Indexed by the final joint level f = f_C d_H + f_H.
  std::vector<double> q_plus;
  std::vector<double> q_minus;
  std::vector<double> p_undisturbed;  // separate run without the probe

  DimPair dims() const { return {cold.dimension(), hot.dimension()}; }
};

/// Effects (E_+, E_-) of the probe on the system for the target projector.
std::pair<ComplexMatrix, ComplexMatrix> probe_effects(DimPair dims, int target_cold,
                                                      int target_hot, double eps);

/// Exact outcome probabilities. Requires 0 < eps < pi/2.
ProbeOutcomeStats probe_statistics(const BipartiteSystem& sys, const ComplexMatrix& u,
                                   int target_cold, int target_hot, double eps);

/// Trace distance between rho and the system state after the probe coupling
/// with the ancilla left unread.
double probe_disturbance(const BipartiteSystem& sys, int target_cold, int target_hot, double eps);

/// p^W(target -> f) = (q_+ - q_-) / (2 sin 2 eps) + p_f / 2. Throws
/// PreconditionViolated when sin 2 eps <= 1e-9.
std::vector<double> reconstruct_pw(const ProbeOutcomeStats& stats);

struct SampledReconstruction {
  std::vector<double> value;
  std::vector<double> std_error;
  std::vector<double> freq_plus;
  std::vector<double> freq_minus;
  std::vector<double> freq_undisturbed;
};

/// Draws `shots` outcomes for the probe run and `shots` for the undisturbed
/// run. Shot k of a run depends only on (seed, run, k).
SampledReconstruction sampled_reconstruction(const ProbeOutcomeStats& stats, std::int64_t shots,
                                             std::uint64_t seed);

/// Row of the target in TransitionTable CSV layout plus a stderr column.
void write_reconstruction_csv(std::ostream& os, const ProbeOutcomeStats& stats,
                              const std::vector<double>& values,
                              const std::vector<double>& std_errors);

}  // namespace qheat
