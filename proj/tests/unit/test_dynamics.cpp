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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "qheat/dynamics.hpp"
#include "qheat/errors.hpp"

namespace qheat {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(TwoQubitUnitary, UnitaryAndEnergyPreserving) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> ang(-4, 4);
  for (int trial = 0; trial < 100; ++trial) {
    const double th = ang(rng), ka = ang(rng), la = ang(rng), ph = ang(rng);
    const UnitaryReport r = two_qubit_unitary(th, ka, la, ph);
    EXPECT_LT(unitarity_defect(r.matrix), 1e-12);
    EXPECT_LT(r.commutator_norm, 1e-12);
    EXPECT_LT(std::abs(r.matrix(1, 1) - std::polar(std::cos(th), ka + la)), 1e-15);
    EXPECT_LT(std::abs(r.matrix(2, 1) - std::polar(std::sin(th), ka + ph)), 1e-15);
    EXPECT_LT(std::abs(r.matrix(1, 2) + std::polar(std::sin(th), ka - ph)), 1e-15);
    EXPECT_EQ(r.matrix(0, 0), Complex(1.0));
    EXPECT_EQ(r.matrix(3, 3), Complex(1.0));
  }
}

TEST(QuditUnitary, TwoLevelCaseMatchesQubitConstructor) {
  const ManifoldRotation r{0, 1, 0.7, 0.2, -0.4, 1.1};
  const UnitaryReport a = two_qubit_unitary(0.7, 1.1, -0.4, 0.2);
  const UnitaryReport b = qudit_energy_preserving(EnergySpectrum::two_level(), std::vector{r});
  EXPECT_LT(oracle::max_abs(a.matrix - b.matrix), 1e-15);
}

TEST(QuditUnitary, QutritRealRotationsLayout) {
  const EnergySpectrum s({0.0, 1.0, 1.15});
  const double t01 = 0.4, t02 = 1.2;
  const std::vector<ManifoldRotation> rots{{0, 1, t01}, {0, 2, t02}, {1, 2, t02}};
  const UnitaryReport r = qudit_energy_preserving(s, rots);
  EXPECT_LT(unitarity_defect(r.matrix), 1e-12);
  EXPECT_LT(r.commutator_norm, 1e-12);
  oracle::M expected = oracle::M::Identity(9, 9);
  auto rot = [&](int a, int b, double t) {
    expected(a, a) = std::cos(t);
    expected(b, b) = std::cos(t);
    expected(a, b) = -std::sin(t);
    expected(b, a) = std::sin(t);
  };
  rot(1, 3, t01);
  rot(2, 6, t02);
  rot(5, 7, t02);
  EXPECT_LT(oracle::max_abs(r.matrix - expected), 1e-15);
}

TEST(QuditUnitary, RandomRotationsPreserveEnergy) {
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> ang(0, 2 * kPi);
  for (int d : {3, 4, 5}) {
    std::vector<double> lv{0.0};
    for (int k = 1; k < d; ++k) lv.push_back(lv.back() + 0.7 + 0.13 * k * k);
    const EnergySpectrum s(lv);
    ASSERT_TRUE(s.nondegenerate_bohr());
    std::vector<ManifoldRotation> rots;
    for (int n = 0; n < d; ++n)
      for (int m = n + 1; m < d; ++m) rots.push_back({n, m, ang(rng), ang(rng), ang(rng), ang(rng)});
    const UnitaryReport r = qudit_energy_preserving(s, rots);
    EXPECT_LT(unitarity_defect(r.matrix), 1e-12);
    EXPECT_LT(r.commutator_norm, 1e-11);
  }
}

TEST(QuditUnitary, RejectsBadInput) {
  EXPECT_THROW(qudit_energy_preserving(EnergySpectrum({0.0, 1.0, 2.0}), std::vector<ManifoldRotation>{}),
               DegenerateSpectrum);
  const EnergySpectrum s({0.0, 1.0, 1.15});
  EXPECT_THROW(qudit_energy_preserving(s, std::vector<ManifoldRotation>{{1, 0, 0.1}}),
               InfeasibleParameters);
  EXPECT_THROW(qudit_energy_preserving(s, std::vector<ManifoldRotation>{{0, 3, 0.1}}),
               InfeasibleParameters);
  EXPECT_THROW(
      qudit_energy_preserving(s, std::vector<ManifoldRotation>{{0, 1, 0.1}, {0, 1, 0.2}}),
      InfeasibleParameters);
}

TEST(ExperimentUnitary, MatchesTaylorExponential) {
  const double coupling = 215.1;
  for (double t : {0.0, 0.0007, 0.002, 0.004}) {
    const oracle::M h = experiment_interaction(coupling);
    const oracle::M expected = oracle::expm(Complex(0, -t) * h);
    const UnitaryReport r = experiment_unitary(coupling, t);
    EXPECT_LT(oracle::max_abs(r.matrix - expected), 1e-10) << t;
    EXPECT_LT(r.commutator_norm, 1e-12);
  }
}

TEST(ExperimentUnitary, RotationAngleIsLinearInTime) {
  const double coupling = 215.1;
  for (int k = 0; k <= 40; ++k) {
    const double t = 0.0045 * k / 40.0;
    const UnitaryReport r = experiment_unitary(coupling, t);
    EXPECT_NEAR(exchange_angle(r.matrix, {2, 2}, 0, 1), kPi * coupling * t, 1e-12);
    EXPECT_LT(std::abs(r.matrix(0, 0) - 1.0), 1e-12);
    EXPECT_LT(std::abs(r.matrix(3, 3) - 1.0), 1e-12);
  }
  EXPECT_THROW(experiment_unitary(coupling, -1.0), PreconditionViolated);
}

TEST(ExperimentUnitary, InteractionIsHermitian) {
  const ComplexMatrix h = experiment_interaction(220.0);
  EXPECT_LT(oracle::max_abs(h - h.adjoint()), 1e-15);
  // Acts only inside the single-excitation manifold.
  EXPECT_EQ(h(0, 0), Complex(0.0));
  EXPECT_EQ(h(0, 3), Complex(0.0));
  EXPECT_NEAR(std::abs(h(1, 2)), kPi * 220.0, 1e-12);
}

TEST(PerturbedUnitary, EpsilonVanishesWithoutPerturbation) {
  PerturbedExchange p;
  p.coupling = 220;
  p.time = 0.004;
  const UnitaryReport r = perturbed_unitary(p);
  ASSERT_TRUE(r.epsilon.has_value());
  EXPECT_LT(*r.epsilon, 1e-12);
  EXPECT_LT(oracle::max_abs(r.matrix - experiment_unitary(220, 0.004).matrix), 1e-12);
}

TEST(PerturbedUnitary, EpsilonGrowsAndBreaksEnergyConservation) {
  double prev = 0;
  for (double jx : {5.0, 20.0, 50.0, 100.0}) {
    PerturbedExchange p;
    p.coupling = 220;
    p.time = 0.004;
    p.jx = jx;
    const UnitaryReport r = perturbed_unitary(p);
    EXPECT_LT(unitarity_defect(r.matrix), 1e-12);
    EXPECT_GT(*r.epsilon, prev);
    EXPECT_LE(*r.epsilon, 2.0 + 1e-12);
    EXPECT_GT(r.commutator_norm, 1e-6);
    prev = *r.epsilon;
    const oracle::M sx = (oracle::M(2, 2) << 0, 1, 1, 0).finished();
    const oracle::M h = experiment_interaction(220) + jx * oracle::kron(sx, sx);
    EXPECT_LT(oracle::max_abs(r.matrix - oracle::expm(Complex(0, -0.004) * h)), 1e-10);
  }
}

TEST(CommutatorNorm, DetectsNonConservingUnitary) {
  oracle::M swap_00_11 = oracle::M::Identity(4, 4);
  swap_00_11(0, 0) = swap_00_11(3, 3) = 0;
  swap_00_11(0, 3) = swap_00_11(3, 0) = 1;
  const ComplexMatrix h = kron(EnergySpectrum::two_level().hamiltonian(), identity(2)) +
                          kron(identity(2), EnergySpectrum::two_level().hamiltonian());
  EXPECT_NEAR(commutator_norm(swap_00_11, h), 2.0, 1e-12);
  EXPECT_THROW(commutator_norm(identity(3), h), DimensionMismatch);
}

}  // namespace
}  // namespace qheat
