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

// Heat fluctuation statistics: two-projective-measurement (TPM) probabilities,
// the Margenau-Hill (MH) quasiprobability, average heat and flow
// decompositions, exchange-fluctuation-theorem quantities.
//
// Sign convention: Q = tr(rho H_C) - tr(rho(tau) H_C), so Q > 0 is heat
// flowing out of C (backflow when C is the colder body).

#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "qheat/dynamics.hpp"
#include "qheat/states.hpp"

namespace qheat {

inline constexpr double kNegligibleWeight = 1e-12;

enum class TableKind { Tpm, MargenauHill };

const char* to_string(TableKind kind);

/// Dense (i_C, i_H) -> (f_C, f_H) table of (quasi)probabilities.
class TransitionTable {
 public:
  TransitionTable(TableKind kind, EnergySpectrum cold, EnergySpectrum hot,
                  std::vector<double> entries);

  TableKind kind() const noexcept { return kind_; }
  DimPair dims() const noexcept { return dims_; }
  const EnergySpectrum& cold() const noexcept { return cold_; }
  const EnergySpectrum& hot() const noexcept { return hot_; }
  std::span<const double> entries() const noexcept { return entries_; }

  double operator()(int i_cold, int i_hot, int f_cold, int f_hot) const {
    return at(dims_.index(i_cold, i_hot), dims_.index(f_cold, f_hot));
  }
  /// Joint indices (C-major).
  double at(int initial, int final) const {
    return entries_[static_cast<std::size_t>(initial * dims_.joint() + final)];
  }

  /// E^C_f - E^C_i, the change of C's energy along the transition.
  double delta_e_cold(int initial, int final) const;
  double delta_e_hot(int initial, int final) const;

  double sum() const;
  double min() const;

 private:
  TableKind kind_;
  EnergySpectrum cold_;
  EnergySpectrum hot_;
  DimPair dims_;
  std::vector<double> entries_;
};

/// p = |<f|U|i>|^2 <i|rho|i>: projective energy measurement, evolution,
/// projective measurement.
TransitionTable tpm_distribution(const BipartiteSystem& sys, const ComplexMatrix& u);

/// p = Re tr(U^dag Pi_f U Pi_i rho).
TransitionTable mh_distribution(const BipartiteSystem& sys, const ComplexMatrix& u);

struct MarginalDeviation {
  double initial = 0;  // max |sum_f p(i -> f) - tr(rho Pi_i)|
  double final = 0;    // max |sum_i p(i -> f) - tr(U rho U^dag Pi_f)|
  double max() const { return initial > final ? initial : final; }
};

MarginalDeviation marginal_check(const TransitionTable& table, const BipartiteSystem& sys,
                                 const ComplexMatrix& u);

/// tr(rho H_C) - tr(U rho U^dag H_C)
double heat_direct(const BipartiteSystem& sys, const ComplexMatrix& u);

/// sum p (E^C_i - E^C_f)
double heat_from_table(const TransitionTable& table);

struct NegativeEntry {
  int initial;
  int final;
  double value;
};

struct FlowDecomposition {
  double total = 0;
  double back = 0;    // contributions C -> H
  double direct = 0;  // contributions H -> C
  std::vector<NegativeEntry> negative_entries;
};

/// Splits p into positive and negative parts and sorts each transition into
/// back or direct flow; total == back - direct.
FlowDecomposition decompose_flows(const TransitionTable& table);

struct HeatReport {
  double q = 0;
  double q_tpm = 0;
  double q_back = 0;
  double q_direct = 0;
  std::vector<NegativeEntry> negative_entries;
};

HeatReport heat_report(const BipartiteSystem& sys, const ComplexMatrix& u);

/// Closed-form exchange entries p(nm -> mn) for manifold-rotation dynamics on
/// equal spectra with coherences confined to the exchange manifolds.
struct ExchangeEntry {
  int n = 0;  // initial (C, H) = (n, m), final (m, n)
  int m = 0;
  double mh = 0;
  double tpm = 0;
};

std::vector<ExchangeEntry> qudit_closed_form_pw(const BipartiteSystem& sys,
                                                std::span<const ManifoldRotation> rotations);

/// Q - Q_tpm from the closed form.
double qudit_closed_form_delta_q(const BipartiteSystem& sys,
                                 std::span<const ManifoldRotation> rotations);

/// sum_{n<m} |rho(nd+m, md+n)| (E_m - E_n): largest |Q - Q_tpm| reachable by
/// manifold rotations for this initial state.
double delta_q_max(const BipartiteSystem& sys);

/// Closed forms for two resonant qubits (gap 1 after rescaling the temperatures)
/// under the general energy-preserving unitary.
struct TwoQubitClosedForm {
  double mh_01_10 = 0;
  double mh_10_01 = 0;
  double tpm_01_10 = 0;
  double tpm_10_01 = 0;
  double q = 0;
  double q_tpm = 0;
};

TwoQubitClosedForm two_qubit_closed_form(const TwoQubitParams& state, double theta,
                                         double lam = 0.0, double phi = 0.0);

/// Coherence correction to the exchange fluctuation theorem,
/// sum_{l, k != m} (rho_ll / rho_kk) Re(rho_km <l|U|k> <m|U^dag|l>).
/// Throws DivergentQuantity when a weighted term divides by a vanishing population.
double chi_bar(const BipartiteSystem& sys, const ComplexMatrix& u);

struct XftReport {
  double lhs = 0;          // < exp(dI + dbeta dE_C) >_W
  double chi_bar = 0;
  double avg_delta_i = 0;  // < dI >_W
  bool resonance_ok = true;
  double identity_gap() const { return lhs - 1.0 - chi_bar; }
};

/// Averages over an MH table. Needs both inverse temperatures on `sys`.
/// Resonance E^C_i - E^C_f = E^H_f - E^H_i is required to 1e-9 max(1, E_bar)
/// on every non-negligible entry, or to `energy_mismatch` when given; beyond
/// that, throws PreconditionViolated. resonance_ok reports the strict check.
XftReport xft_lhs(const TransitionTable& table, const BipartiteSystem& sys,
                  const ComplexMatrix& u, std::optional<double> energy_mismatch = std::nullopt);

struct JReport {
  double j = 0;
  double c_norm = 0;  // ||c(rho)||
  double q_norm = 0;  // ||q(rho)||
  double bound() const { return c_norm + q_norm; }
};

/// <exp(dbeta dE_C)>_W = 1 + J with J = Re tr(U^dag (rho_C x rho_H) U (c + q)).
JReport j_term(const BipartiteSystem& sys, const ComplexMatrix& u);

/// sum p^W exp(dbeta (E^C_i - E^C_f)), computed straight from the table.
double average_exp_heat(const TransitionTable& table, double beta_cold, double beta_hot);

/// CSV with header i_C,i_H,f_C,f_H,value,dE_C,dE_H and 17 significant digits.
void write_table_csv(std::ostream& os, const TransitionTable& table);

}  // namespace qheat
