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

// Energy-preserving exchange unitaries and their perturbations.

#include <optional>
#include <span>

#include "qheat/states.hpp"
#include "qheat/tensor_core.hpp"

namespace qheat {

inline constexpr double kUnitarityTolerance = 1e-10;

/// Rotation in the exchange manifold {|n m>, |m n>} with n < m. The block
/// acting on (|n m>, |m n>) is
///   [ e^{i(kappa+lam)} cos(theta)   -e^{i(kappa-phi)} sin(theta) ]
///   [ e^{i(kappa+phi)} sin(theta)    e^{i(kappa-lam)} cos(theta) ]
struct ManifoldRotation {
  int n = 0;
  int m = 1;
  double theta = 0.0;
  double phi = 0.0;
  double lam = 0.0;
  double kappa = 0.0;
};

struct UnitaryReport {
  ComplexMatrix matrix;
  double commutator_norm = 0.0;  // ||[U, H_C + H_H]||
  std::optional<double> epsilon;  // ||U - U_ref|| when a reference exists
};

/// ||U H - H U||
double commutator_norm(const ComplexMatrix& u, const ComplexMatrix& h_total);

/// ||U^dagger U - 1||
double unitarity_defect(const ComplexMatrix& u);

/// Two resonant qubits with H_C = H_H = gap |1><1|.
UnitaryReport two_qubit_unitary(double theta, double kappa = 0.0, double lam = 0.0,
                                double phi = 0.0, double gap = 1.0);

/// Direct sum of manifold rotations for two copies of `spectrum`.
/// Throws DegenerateSpectrum or InfeasibleParameters (bad or repeated manifold).
UnitaryReport qudit_energy_preserving(const EnergySpectrum& spectrum,
                                      std::span<const ManifoldRotation> rotations);

/// H_int = (pi J / 2)(sigma_x^H sigma_y^C - sigma_y^H sigma_x^C), C-major.
/// `coupling` in Hz, so H_int t is dimensionless with t in seconds.
ComplexMatrix experiment_interaction(double coupling);

/// exp(-i H_int t). Commutator measured against resonant gaps `gap`.
UnitaryReport experiment_unitary(double coupling, double time, double gap = 1.0);

struct PerturbedExchange {
  double coupling = 215.1;  // J, Hz
  double jx = 0.0;          // strength of the sigma_x (x) sigma_x term
  double time = 0.0;
  double gap_cold = 1.0;
  double gap_hot = 1.0;
};

/// exp(-i (H_int + jx sigma_x (x) sigma_x) t), with epsilon measured against
/// the jx = 0 member of the same family.
UnitaryReport perturbed_unitary(const PerturbedExchange& p);

/// Signed rotation angle of the (|n m>, |m n>) block for phase-free
/// rotations, atan2(Re U_ba, Re U_aa) in (-pi, pi].
double exchange_angle(const ComplexMatrix& u, DimPair dims, int n, int m);

}  // namespace qheat
