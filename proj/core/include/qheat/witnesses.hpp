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

// Heat-flow inequalities whose violation certifies negative quasiprobabilities,
// plus the strong-backflow entanglement witness.

#include <optional>
#include <string>
#include <vector>

#include "qheat/fluctuations.hpp"

namespace qheat {

inline constexpr double kViolationMargin = 1e-12;

struct SecondaryBound {
  std::string name;
  double bound = 0;
  bool violated = false;
};

struct WitnessVerdict {
  std::string id;
  double bound = 0;
  double observed = 0;
  bool violated = false;
  bool preconditions_ok = true;
  std::string detail;  // failed preconditions, semicolon separated
  std::vector<SecondaryBound> secondary;
};

/// |Q| <= ((2 + e^{b_H E} + e^{b_C E}) / |e^{b_C E} - e^{b_H E}|) |Q_tpm|
/// for two resonant qubits. Throws PreconditionViolated when b_C == b_H.
WitnessVerdict inequality_t1(double q, double q_tpm, double beta_cold, double beta_hot,
                             double gap = 1.0);

/// Qubit inequality for nearly energy-preserving U with ||U - U_ep|| <= epsilon
/// and slightly detuned gaps. Reports the symmetric bound as the main one and
/// the one-sided direct (Q < 0) and back (Q > 0) bounds as secondary; any
/// applicable violation sets `violated`.
WitnessVerdict inequality_t2(double q, double q_tpm, double beta_cold, double beta_hot,
                             double gap_cold, double gap_hot, double epsilon);

/// Q <= (log(1 + chi_bar) - <dI>_W) / dbeta, with + |b_H| epsilon_work / dbeta
/// when the energy mismatch bound is supplied (id T3-nonideal). For dbeta < 0
/// the inequality direction flips. Throws DivergentQuantity if 1 + chi_bar <= 0.
WitnessVerdict inequality_t3(double q, const XftReport& xft, double beta_cold, double beta_hot,
                             std::optional<double> epsilon_work = std::nullopt);

/// Q <= log(1 + J) / dbeta. Throws DivergentQuantity if 1 + J <= 0.
WitnessVerdict inequality_i4(double q, double j, double beta_cold, double beta_hot);

struct T4Verdicts {
  WitnessVerdict lower;
  WitnessVerdict upper;
};

/// Q_tpm - 2 lambda_- <= Q <= Q_tpm + 2 lambda_+, with lambda_-/+ the TPM
/// weight of C-energy losses/gains. Throws DegenerateSpectrum for degenerate
/// Bohr spectra.
T4Verdicts inequality_t4(double q, const TransitionTable& tpm);

/// Q > log(d) / dbeta certifies entanglement.
WitnessVerdict strong_backflow(double q, double beta_cold, double beta_hot, int d);

}  // namespace qheat
