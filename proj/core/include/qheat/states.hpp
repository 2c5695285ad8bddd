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

// Locally thermal bipartite states.
//
// Units: k = hbar = 1, dimensionless inverse temperatures. Local Hamiltonians
// are diagonal, H_X = sum_n E_n |n><n| with E_0 = 0.

#include <array>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "qheat/tensor_core.hpp"

namespace qheat {

inline constexpr double kBohrTolerance = 1e-9;
inline constexpr double kMarginalTolerance = 1e-9;

class EnergySpectrum {
 public:
  /// Throws InfeasibleParameters unless levels are strictly ascending from 0.
  explicit EnergySpectrum(std::vector<double> levels);

  static EnergySpectrum two_level(double gap = 1.0);

  int dimension() const noexcept { return static_cast<int>(levels_.size()); }
  double operator[](int k) const { return levels_[static_cast<std::size_t>(k)]; }
  std::span<const double> levels() const noexcept { return levels_; }

  /// All gaps E_n - E_m (n > m) pairwise distinct.
  bool nondegenerate_bohr(double tol = kBohrTolerance) const;

  ComplexMatrix hamiltonian() const;

  bool operator==(const EnergySpectrum&) const = default;

 private:
  std::vector<double> levels_;
};

/// Joint state of C and H with their local spectra. Immutable once built;
/// construction checks trace, Hermiticity and positivity, and when both
/// inverse temperatures are given, that both marginals are Gibbs states.
class BipartiteSystem {
 public:
  BipartiteSystem(EnergySpectrum cold, EnergySpectrum hot, ComplexMatrix rho,
                  std::optional<double> beta_cold = std::nullopt,
                  std::optional<double> beta_hot = std::nullopt);

  const EnergySpectrum& cold() const noexcept { return cold_; }
  const EnergySpectrum& hot() const noexcept { return hot_; }
  const ComplexMatrix& rho() const noexcept { return rho_; }
  std::optional<double> beta_cold() const noexcept { return beta_cold_; }
  std::optional<double> beta_hot() const noexcept { return beta_hot_; }
  DimPair dims() const noexcept { return dims_; }

  /// H_C (x) 1
  ComplexMatrix cold_hamiltonian() const;
  /// 1 (x) H_H
  ComplexMatrix hot_hamiltonian() const;
  ComplexMatrix total_hamiltonian() const;

  /// E^C_{i_C} + E^H_{i_H} for joint index i.
  double total_energy(int joint_index) const;

  /// Same spectra, new joint state; betas are dropped unless `keep_betas`.
  BipartiteSystem with_rho(ComplexMatrix rho, bool keep_betas) const;

 private:
  EnergySpectrum cold_;
  EnergySpectrum hot_;
  ComplexMatrix rho_;
  std::optional<double> beta_cold_;
  std::optional<double> beta_hot_;
  DimPair dims_;
};

struct StateDiagnostics {
  double trace_error = 0;
  double hermiticity_defect = 0;
  double min_eigenvalue = 0;
  double cold_marginal_error = 0;  // vs Gibbs, 0 when no beta
  double hot_marginal_error = 0;
};

StateDiagnostics diagnose(const BipartiteSystem& sys);

/// Diagonal Gibbs matrix exp(-beta H) / Z.
ComplexMatrix thermal_state(const EnergySpectrum& spectrum, double beta);

/// Thermal populations of a spectrum.
std::vector<double> gibbs_populations(const EnergySpectrum& spectrum, double beta);

struct TwoQubitParams {
  double beta_cold = 1.0;
  double beta_hot = 1.0;
  double gap = 1.0;
  double p00 = 0.25;
  double eta = 0.0;  // absolute coherence |01><10| amplitude
  double xi = 0.0;   // phase: rho(01,10) = eta e^{i xi}
};

struct TwoQubitBounds {
  double p00_min;
  double p00_max;
};

/// Admissible range of the |00> population for the given marginals.
TwoQubitBounds two_qubit_population_bounds(double beta_cold, double beta_hot, double gap = 1.0);

/// Largest |eta| compatible with positivity at fixed P00.
double two_qubit_eta_cap(const TwoQubitParams& p);

BipartiteSystem two_qubit_state(const TwoQubitParams& p);

struct ExperimentStateParams {
  Complex gamma = 0.0;
  double beta_cold = 1.13;
  double beta_hot = 0.9618;
  double gap_cold = 1.0;
  double gap_hot = 1.0;
};

/// rho_H (x) rho_C + gamma |01><10| + h.c., where the kets are written
/// hot-first (|i_H i_C>). Stored C-major, so gamma lands on the (10, 01)
/// element and gamma* on (01, 10).
BipartiteSystem experiment_state(const ExperimentStateParams& p);

struct QutritStateParams {
  double beta_cold = 1.3;
  double beta_hot = 0.3;
  double e1 = 1.0;
  double e2 = 1.15;
  // Free populations; the remaining five follow from the thermal marginals.
  double rho0 = 0.3;
  double rho5 = 0.03;
  double rho7 = 0.07;
  double rho8 = 0.06;
  // Relative coherence amplitudes in [0, 1] for manifolds (1,3), (2,6), (5,7).
  double eta13 = 0.0;
  double eta26 = 0.0;
  double eta57 = 0.0;
  double xi13 = 0.0;
  double xi26 = 0.0;
  double xi57 = 0.0;
};

/// All nine populations implied by the free ones and the marginals.
std::array<double, 9> qutrit_populations(const QutritStateParams& p);

BipartiteSystem two_qutrit_state(const QutritStateParams& p);

/// Coherence in the exchange manifold {|n m>, |m n>} (n < m):
/// rho(n d + m, m d + n) = eta e^{i xi} sqrt(rho_{nd+m} rho_{md+n}).
struct ManifoldCoherence {
  int n = 0;
  int m = 1;
  double eta = 0.0;
  double xi = 0.0;
};

struct QuditStateParams {
  EnergySpectrum cold = EnergySpectrum::two_level();
  EnergySpectrum hot = EnergySpectrum::two_level();
  double beta_cold = 1.0;
  double beta_hot = 1.0;
  /// Joint index -> population. The rest is solved from the 2d marginal
  /// equations; the free set must leave a uniquely solvable system.
  std::map<int, double> free_populations;
  std::vector<ManifoldCoherence> coherences;
};

BipartiteSystem qudit_locally_thermal(const QuditStateParams& p);

enum class DephasingBasis {
  TotalEnergy,  // keep blocks of equal E_C + E_H
  LocalEnergy,  // keep only the product-basis diagonal
};

BipartiteSystem dephase(const BipartiteSystem& sys,
                        DephasingBasis basis = DephasingBasis::TotalEnergy);

/// Smallest eigenvalue of the partial transpose over H.
double min_pt_eigenvalue(const BipartiteSystem& sys);

/// PPT is a separability certificate only for 2x2 and 2x3 systems.
std::optional<bool> ppt_separable(const BipartiteSystem& sys);

}  // namespace qheat
