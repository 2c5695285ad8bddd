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

// Random instances for property checks: locally thermal states with
// coherence confined to the exchange manifolds, energy-preserving unitaries,
// and unstructured density matrices / unitaries.

#include <cstdint>
#include <random>
#include <vector>

#include "qheat/dynamics.hpp"
#include "qheat/states.hpp"

namespace qheat::scan {

using Rng = std::mt19937_64;

struct Instance {
  BipartiteSystem sys;
  std::vector<ManifoldRotation> rotations;
  ComplexMatrix u;
};

struct EnsembleOptions {
  double beta_min = 0.1;
  double beta_max = 2.0;
  double min_beta_gap = 0.05;
  // Populations are kept above this fraction of the product value.
  double population_floor = 0.05;
  double max_eta = 0.95;
};

/// Spectrum {0, 1} for d = 2, {0, 1, e2} with e2 in [1.1, 1.9] for d = 3, and
/// a random nondegenerate-Bohr ladder for d >= 4.
EnergySpectrum random_spectrum(Rng& rng, int d);

/// Locally thermal state for two copies of `spectrum`: Gibbs product plus a
/// random marginal-preserving population shift and random manifold
/// coherences. beta_C > beta_H.
BipartiteSystem random_locally_thermal(Rng& rng, const EnergySpectrum& spectrum,
                                       const EnsembleOptions& opt = {});

/// One random rotation per exchange manifold.
std::vector<ManifoldRotation> random_rotations(Rng& rng, int d);

Instance random_instance(Rng& rng, int d, const EnsembleOptions& opt = {});

/// Ginibre-distributed full-rank density matrix.
ComplexMatrix random_density_matrix(Rng& rng, int n);

/// Haar-like unitary from the QR decomposition of a Ginibre matrix.
ComplexMatrix random_unitary(Rng& rng, int n);

}  // namespace qheat::scan
