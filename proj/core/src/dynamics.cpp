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

#include "qheat/dynamics.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <string>

#include "qheat/errors.hpp"

namespace qheat {

namespace {

ComplexMatrix pauli_x() {
  ComplexMatrix s(2, 2);
  s << 0, 1, 1, 0;
  return s;
}

ComplexMatrix pauli_y() {
  ComplexMatrix s(2, 2);
  s << 0, Complex(0, -1), Complex(0, 1), 0;
  return s;
}

ComplexMatrix two_level_total(double gap_cold, double gap_hot) {
  return kron(EnergySpectrum::two_level(gap_cold).hamiltonian(), identity(2)) +
         kron(identity(2), EnergySpectrum::two_level(gap_hot).hamiltonian());
}

void place_rotation(ComplexMatrix& u, int a, int b, const ManifoldRotation& r) {
  const double c = std::cos(r.theta);
  const double s = std::sin(r.theta);
  u(a, a) = std::polar(c, r.kappa + r.lam);
  u(a, b) = -std::polar(s, r.kappa - r.phi);
  u(b, a) = std::polar(s, r.kappa + r.phi);
  u(b, b) = std::polar(c, r.kappa - r.lam);
}

}  // namespace

double commutator_norm(const ComplexMatrix& u, const ComplexMatrix& h_total) {
  if (u.rows() != h_total.rows() || u.cols() != h_total.cols()) {
    throw DimensionMismatch("unitary and Hamiltonian sizes differ");
  }
  return spectral_norm(u * h_total - h_total * u);
}

double unitarity_defect(const ComplexMatrix& u) {
  return spectral_norm(u.adjoint() * u - identity(static_cast<int>(u.rows())));
}

UnitaryReport two_qubit_unitary(double theta, double kappa, double lam, double phi, double gap) {
  ComplexMatrix u = identity(4);
  place_rotation(u, 1, 2, ManifoldRotation{0, 1, theta, phi, lam, kappa});
  const double comm = commutator_norm(u, two_level_total(gap, gap));
  return {std::move(u), comm, std::nullopt};
}

UnitaryReport qudit_energy_preserving(const EnergySpectrum& spectrum,
                                      std::span<const ManifoldRotation> rotations) {
  if (!spectrum.nondegenerate_bohr()) {
    throw DegenerateSpectrum("energy-preserving rotations need a nondegenerate Bohr spectrum");
  }
  const int d = spectrum.dimension();
  const DimPair dims(d, d);
  ComplexMatrix u = identity(dims.joint());
  std::set<std::pair<int, int>> seen;
  for (const auto& r : rotations) {
    if (r.n < 0 || r.m >= d || r.n >= r.m) {
      throw InfeasibleParameters("rotation manifold (n < m < d)",
                                 "got (" + std::to_string(r.n) + ", " + std::to_string(r.m) + ")");
    }
    if (!seen.insert({r.n, r.m}).second) {
      throw InfeasibleParameters("rotation manifold unique",
                                 "duplicate (" + std::to_string(r.n) + ", " +
                                     std::to_string(r.m) + ")");
    }
    place_rotation(u, dims.index(r.n, r.m), dims.index(r.m, r.n), r);
  }
  const ComplexMatrix h =
      kron(spectrum.hamiltonian(), identity(d)) + kron(identity(d), spectrum.hamiltonian());
  const double comm = commutator_norm(u, h);
  return {std::move(u), comm, std::nullopt};
}

ComplexMatrix experiment_interaction(double coupling) {
  // sigma_x^H sigma_y^C in C-major order is sigma_y (x) sigma_x.
  return (std::numbers::pi * coupling / 2.0) *
         (kron(pauli_y(), pauli_x()) - kron(pauli_x(), pauli_y()));
}

UnitaryReport experiment_unitary(double coupling, double time, double gap) {
  if (time < 0) throw PreconditionViolated("interaction time must be >= 0");
  ComplexMatrix u = exp_hermitian(experiment_interaction(coupling), Complex(0, -time));
  const double comm = commutator_norm(u, two_level_total(gap, gap));
  return {std::move(u), comm, std::nullopt};
}

UnitaryReport perturbed_unitary(const PerturbedExchange& p) {
  if (p.time < 0) throw PreconditionViolated("interaction time must be >= 0");
  const ComplexMatrix h0 = experiment_interaction(p.coupling);
  const ComplexMatrix h = h0 + p.jx * kron(pauli_x(), pauli_x());
  ComplexMatrix u = exp_hermitian(h, Complex(0, -p.time));
  const ComplexMatrix reference = exp_hermitian(h0, Complex(0, -p.time));
  const double eps = spectral_norm(u - reference);
  const double comm = commutator_norm(u, two_level_total(p.gap_cold, p.gap_hot));
  return {std::move(u), comm, eps};
}

double exchange_angle(const ComplexMatrix& u, DimPair dims, int n, int m) {
  const int a = dims.index(n, m);
  const int b = dims.index(m, n);
  return std::atan2(u(b, a).real(), u(a, a).real());
}

}  // namespace qheat
