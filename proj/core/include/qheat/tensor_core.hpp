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

// Dense complex linear algebra over small bipartite Hilbert spaces.
//
// Joint basis convention: C-major, |i_C i_H> <-> i_C * d_H + i_H.

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace qheat {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kHermitianTolerance = 1e-10;
inline constexpr double kPsdTolerance = 1e-10;

enum class Subsystem { Cold, Hot };

/// Local dimensions of the cold (C) and hot (H) subsystems.
struct DimPair {
  int cold = 2;
  int hot = 2;

  DimPair() = default;
  DimPair(int d_cold, int d_hot);

  int joint() const noexcept { return cold * hot; }
  int index(int i_cold, int i_hot) const noexcept { return i_cold * hot + i_hot; }

  bool operator==(const DimPair&) const = default;
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Traces out `traced`, returning the reduced state of the other factor.
ComplexMatrix partial_trace(const ComplexMatrix& m, DimPair dims, Subsystem traced);

/// Transposes the indices of `which` only.
ComplexMatrix partial_transpose(const ComplexMatrix& m, DimPair dims, Subsystem which);

/// Max |M - M^dagger| entry.
double hermiticity_defect(const ComplexMatrix& m);

/// Ascending eigenvalues. Throws NotHermitian above kHermitianTolerance.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

/// Largest singular value.
double spectral_norm(const ComplexMatrix& m);

/// Sum of singular values.
double trace_norm(const ComplexMatrix& m);

/// exp(scale * H) for Hermitian H, by eigendecomposition.
ComplexMatrix exp_hermitian(const ComplexMatrix& h, Complex scale);

/// Matrix exponential. Hermitian and anti-Hermitian inputs go through the
/// spectral route; anything else falls back to Pade scaling-and-squaring.
ComplexMatrix matrix_exp(const ComplexMatrix& m);

ComplexMatrix identity(int n);

}  // namespace qheat
