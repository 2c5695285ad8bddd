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
#include <random>

#include "oracles.hpp"
#include "qheat/errors.hpp"
#include "qheat/scan/ensemble.hpp"
#include "qheat/states.hpp"

namespace qheat {
namespace {

double gibbs0(double beta, double gap = 1.0) { return 1.0 / (1.0 + std::exp(-beta * gap)); }

void expect_valid(const BipartiteSystem& sys) {
  const StateDiagnostics d = diagnose(sys);
  EXPECT_LT(d.trace_error, 1e-10);
  EXPECT_LT(d.hermiticity_defect, 1e-10);
  EXPECT_GT(d.min_eigenvalue, -1e-10);
  EXPECT_LT(d.cold_marginal_error, 1e-9);
  EXPECT_LT(d.hot_marginal_error, 1e-9);
}

TEST(EnergySpectrum, ValidatesLevels) {
  EXPECT_THROW(EnergySpectrum({0.0}), InfeasibleParameters);
  EXPECT_THROW(EnergySpectrum({0.1, 1.0}), InfeasibleParameters);
  EXPECT_THROW(EnergySpectrum({0.0, 1.0, 1.0}), InfeasibleParameters);
  EXPECT_TRUE(EnergySpectrum({0.0, 1.0, 1.15}).nondegenerate_bohr());
  EXPECT_FALSE(EnergySpectrum({0.0, 1.0, 2.0}).nondegenerate_bohr());
}

TEST(ThermalState, GibbsPopulations) {
  const EnergySpectrum s({0.0, 1.0, 1.15});
  const ComplexMatrix t = thermal_state(s, 1.3);
  const double z = 1 + std::exp(-1.3) + std::exp(-1.3 * 1.15);
  EXPECT_NEAR(t(0, 0).real(), 1 / z, 1e-15);
  EXPECT_NEAR(t(2, 2).real(), std::exp(-1.3 * 1.15) / z, 1e-15);
  EXPECT_NEAR(std::abs(t(0, 1)), 0.0, 0.0);
  const ComplexMatrix hot = thermal_state(EnergySpectrum::two_level(), 0.0);
  EXPECT_NEAR(hot(0, 0).real(), 0.5, 1e-15);
}

TEST(TwoQubitState, MatchesHandBuiltMatrix) {
  TwoQubitParams p{1.13, 0.962, 1.0, 0.547, -0.05, 0.7};
  const BipartiteSystem sys = two_qubit_state(p);
  const double zc = gibbs0(1.13), zh = gibbs0(0.962);
  EXPECT_NEAR(sys.rho()(0, 0).real(), 0.547, 1e-15);
  EXPECT_NEAR(sys.rho()(1, 1).real(), zc - 0.547, 1e-15);
  EXPECT_NEAR(sys.rho()(2, 2).real(), zh - 0.547, 1e-15);
  EXPECT_NEAR(sys.rho()(3, 3).real(), 1 - zc - zh + 0.547, 1e-15);
  EXPECT_LT(std::abs(sys.rho()(1, 2) - std::polar(-0.05, 0.7)), 1e-15);
  expect_valid(sys);
}

TEST(TwoQubitState, PositiveExactlyInsideBounds) {
  const double bc = 1.13, bh = 0.962;
  const TwoQubitBounds b = two_qubit_population_bounds(bc, bh);
  const double zc = gibbs0(bc), zh = gibbs0(bh);
  EXPECT_NEAR(b.p00_max, std::min(zc, zh), 1e-15);
  EXPECT_NEAR(b.p00_min, std::max(0.0, zc + zh - 1), 1e-15);
  for (int k = -5; k <= 105; ++k) {
    const double p00 = b.p00_min + (b.p00_max - b.p00_min) * k / 100.0;
    const bool in_range = p00 >= b.p00_min - 1e-12 && p00 <= b.p00_max + 1e-12;
    for (double frac : {0.0, 0.5, 0.999, 1.001, 1.5}) {
      TwoQubitParams p{bc, bh, 1.0, p00, 0.0, 0.3};
      const double cap = in_range ? two_qubit_eta_cap(p) : 0.0;
      p.eta = frac * cap + (frac > 1 ? 1e-9 : 0.0);
      // Oracle: eigenvalues of the hand-built matrix.
      oracle::M rho = oracle::M::Zero(4, 4);
      rho(0, 0) = p00;
      rho(1, 1) = zc - p00;
      rho(2, 2) = zh - p00;
      rho(3, 3) = 1 - zc - zh + p00;
      rho(1, 2) = std::polar(p.eta, 0.3);
      rho(2, 1) = std::conj(rho(1, 2));
      const double min_ev =
          Eigen::SelfAdjointEigenSolver<oracle::M>(rho).eigenvalues().minCoeff();
      const bool admissible = in_range && frac <= 1.0;
      if (admissible) {
        EXPECT_NO_THROW(two_qubit_state(p)) << "p00=" << p00 << " frac=" << frac;
        EXPECT_GT(min_ev, -1e-9);
      } else {
        EXPECT_THROW(two_qubit_state(p), InfeasibleParameters) << "p00=" << p00 << " frac=" << frac;
        EXPECT_LT(min_ev, 1e-9);
      }
    }
  }
}

TEST(TwoQubitState, InfeasibleNamesConstraint) {
  try {
    two_qubit_state({1.13, 0.962, 1.0, 0.9, 0.0, 0.0});
    FAIL() << "expected infeasibility";
  } catch (const InfeasibleParameters& e) {
    EXPECT_NE(std::string(e.constraint()).find("P00 <="), std::string::npos);
  }
  try {
    two_qubit_state({1.13, 0.962, 1.0, 0.547, 0.5, 0.0});
    FAIL() << "expected infeasibility";
  } catch (const InfeasibleParameters& e) {
    EXPECT_NE(std::string(e.constraint()).find("|eta|"), std::string::npos);
  }
}

TEST(ExperimentState, PopulationsAndCoherencePlacement) {
  ExperimentStateParams p;
  p.gamma = Complex(-0.1, 0.05);
  const BipartiteSystem sys = experiment_state(p);
  const double c0 = gibbs0(1.13), h0 = gibbs0(0.9618);
  EXPECT_NEAR(sys.rho()(0, 0).real(), c0 * h0, 1e-15);
  EXPECT_NEAR(sys.rho()(1, 1).real(), c0 * (1 - h0), 1e-15);
  EXPECT_NEAR(sys.rho()(2, 2).real(), (1 - c0) * h0, 1e-15);
  // Hot-first |01><10| is (H=0,C=1) -> (H=1,C=0): C-major row 2, column 1.
  EXPECT_LT(std::abs(sys.rho()(2, 1) - p.gamma), 1e-15);
  EXPECT_LT(std::abs(sys.rho()(1, 2) - std::conj(p.gamma)), 1e-15);
  expect_valid(sys);
}

TEST(ExperimentState, PartialTransposeMinimumNearReportedValue) {
  ExperimentStateParams p;
  p.gamma = -0.19;
  const BipartiteSystem sys = experiment_state(p);
  EXPECT_NEAR(sys.rho()(0, 0).real(), 0.547, 5e-4);
  const double m = min_pt_eigenvalue(sys);
  EXPECT_GE(m, 0.0009);
  EXPECT_LE(m, 0.0019);
  ASSERT_TRUE(ppt_separable(sys).has_value());
  EXPECT_TRUE(*ppt_separable(sys));
}

TEST(ExperimentState, TooLargeCoherenceRejected) {
  ExperimentStateParams p;
  p.gamma = -0.3;
  EXPECT_THROW(experiment_state(p), InfeasibleParameters);
}

TEST(QutritState, PopulationsMatchHandSolvedMarginals) {
  QutritStateParams p;
  const auto pops = qutrit_populations(p);
  const EnergySpectrum s({0.0, 1.0, 1.15});
  // Independent route: Gaussian elimination on the full 6x9 marginal system
  // with the four free populations substituted.
  const double zc = 1 + std::exp(-1.3) + std::exp(-1.3 * 1.15);
  const double zh = 1 + std::exp(-0.3) + std::exp(-0.3 * 1.15);
  const double c[3] = {1 / zc, std::exp(-1.3) / zc, std::exp(-1.3 * 1.15) / zc};
  const double h[3] = {1 / zh, std::exp(-0.3) / zh, std::exp(-0.3 * 1.15) / zh};
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(10, 9);
  Eigen::VectorXd rhs(10);
  for (int n = 0; n < 3; ++n) {
    for (int m = 0; m < 3; ++m) {
      a(n, 3 * n + m) = 1;
      a(3 + m, 3 * n + m) = 1;
    }
    rhs(n) = c[n];
    rhs(3 + n) = h[n];
  }
  const int free_idx[4] = {0, 5, 7, 8};
  const double free_val[4] = {0.3, 0.03, 0.07, 0.06};
  for (int k = 0; k < 4; ++k) {
    a(6 + k, free_idx[k]) = 1;
    rhs(6 + k) = free_val[k];
  }
  const Eigen::VectorXd x = a.fullPivLu().solve(rhs);
  for (int k = 0; k < 9; ++k) EXPECT_NEAR(pops[static_cast<std::size_t>(k)], x(k), 1e-12) << k;
  EXPECT_NEAR(pops[1], 0.1689, 5e-4);
  EXPECT_NEAR(pops[6], 0.0199, 5e-4);
  for (double v : pops) EXPECT_GT(v, 0.0);
}

TEST(QutritState, CaptionParametersGiveValidState) {
  QutritStateParams p;
  p.eta13 = p.eta26 = p.eta57 = 1.0;
  const BipartiteSystem sys = two_qutrit_state(p);
  expect_valid(sys);
  // Nothing outside the diagonal and the three exchange manifolds.
  for (int a = 0; a < 9; ++a)
    for (int b = 0; b < 9; ++b) {
      const bool allowed = a == b || (std::min(a, b) == 1 && std::max(a, b) == 3) ||
                           (std::min(a, b) == 2 && std::max(a, b) == 6) ||
                           (std::min(a, b) == 5 && std::max(a, b) == 7);
      if (!allowed) EXPECT_EQ(sys.rho()(a, b), Complex(0.0));
    }
  EXPECT_NEAR(std::abs(sys.rho()(1, 3)), std::sqrt(sys.rho()(1, 1).real() * sys.rho()(3, 3).real()),
              1e-15);
}

TEST(QutritState, NegativeDerivedPopulationNamed) {
  QutritStateParams p;
  p.rho0 = 0.6;
  try {
    two_qutrit_state(p);
    FAIL();
  } catch (const InfeasibleParameters& e) {
    EXPECT_NE(std::string(e.constraint()).find("population["), std::string::npos);
  }
}

TEST(QuditState, ReducesToTwoQubitConstructor) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0, 1);
  for (int trial = 0; trial < 50; ++trial) {
    const double bh = 0.1 + u(rng), bc = bh + 0.05 + u(rng);
    const TwoQubitBounds b = two_qubit_population_bounds(bc, bh);
    TwoQubitParams tq{bc, bh, 1.0, b.p00_min + (b.p00_max - b.p00_min) * (0.05 + 0.9 * u(rng)), 0.0,
                      6.0 * u(rng)};
    const double rel = 0.95 * u(rng);
    tq.eta = rel * two_qubit_eta_cap(tq);
    QuditStateParams qp;
    qp.beta_cold = bc;
    qp.beta_hot = bh;
    qp.free_populations = {{0, tq.p00}};
    qp.coherences = {{0, 1, rel, tq.xi}};
    const BipartiteSystem a = two_qubit_state(tq);
    const BipartiteSystem q = qudit_locally_thermal(qp);
    EXPECT_LT(oracle::max_abs(a.rho() - q.rho()), 1e-12);
  }
}

TEST(QuditState, ReducesToTwoQutritConstructor) {
  QutritStateParams p;
  p.eta13 = 0.9;
  p.eta26 = 0.4;
  p.eta57 = 1.0;
  p.xi13 = 0.3;
  p.xi26 = -1.2;
  p.xi57 = 2.0;
  QuditStateParams qp;
  qp.cold = qp.hot = EnergySpectrum({0.0, 1.0, 1.15});
  qp.beta_cold = 1.3;
  qp.beta_hot = 0.3;
  qp.free_populations = {{0, 0.3}, {5, 0.03}, {7, 0.07}, {8, 0.06}};
  qp.coherences = {{0, 1, 0.9, 0.3}, {0, 2, 0.4, -1.2}, {1, 2, 1.0, 2.0}};
  EXPECT_LT(oracle::max_abs(two_qutrit_state(p).rho() - qudit_locally_thermal(qp).rho()), 1e-12);
}

TEST(QuditState, RejectsUnderdeterminedFreeSet) {
  QuditStateParams qp;
  qp.cold = qp.hot = EnergySpectrum({0.0, 1.0, 1.15});
  qp.free_populations = {{0, 0.3}};
  EXPECT_THROW(qudit_locally_thermal(qp), InfeasibleParameters);
  qp.cold = qp.hot = EnergySpectrum({0.0, 1.0, 2.0});
  EXPECT_THROW(qudit_locally_thermal(qp), DegenerateSpectrum);
}

TEST(Constructors, RandomEnsembleSatisfiesStateInvariants) {
  scan::Rng rng(22);
  for (int d : {2, 3, 4}) {
    for (int trial = 0; trial < 100; ++trial) {
      const EnergySpectrum s = scan::random_spectrum(rng, d);
      expect_valid(scan::random_locally_thermal(rng, s));
    }
  }
}

TEST(Dephase, IdempotentAndCommutesWithPartialTrace) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    const ComplexMatrix g = oracle::random_matrix(rng, 6, 6);
    ComplexMatrix rho = g * g.adjoint();
    rho /= rho.trace();
    const BipartiteSystem sys(EnergySpectrum({0.0, 1.0}), EnergySpectrum({0.0, 0.4, 1.0}), rho);
    for (auto basis : {DephasingBasis::TotalEnergy, DephasingBasis::LocalEnergy}) {
      const BipartiteSystem once = dephase(sys, basis);
      EXPECT_LT(oracle::max_abs(dephase(once, basis).rho() - once.rho()), 1e-15);
      EXPECT_NEAR(std::abs(once.rho().trace() - 1.0), 0.0, 1e-12);
      for (auto side : {Subsystem::Cold, Subsystem::Hot}) {
        // Local marginals are dephased in their own energy basis.
        ComplexMatrix expected = partial_trace(sys.rho(), sys.dims(), side);
        const ComplexMatrix got = partial_trace(once.rho(), sys.dims(), side);
        for (Eigen::Index i = 0; i < expected.rows(); ++i)
          EXPECT_NEAR(std::abs(got(i, i) - expected(i, i)), 0.0, 1e-12);
      }
    }
  }
}

TEST(Dephase, KeepsResonantCoherenceDropsOthers) {
  const BipartiteSystem sys = two_qubit_state({1.0, 0.5, 1.0, 0.4, 0.1, 0.0});
  EXPECT_NEAR(dephase(sys).rho()(1, 2).real(), 0.1, 1e-15);
  EXPECT_EQ(dephase(sys, DephasingBasis::LocalEnergy).rho()(1, 2), Complex(0.0));

  ComplexMatrix rho = ComplexMatrix::Identity(4, 4) * 0.25;
  rho(1, 2) = rho(2, 1) = 0.1;
  rho(0, 3) = rho(3, 0) = 0.05;
  const BipartiteSystem off(EnergySpectrum({0.0, 1.0}), EnergySpectrum({0.0, 1.3}), rho);
  const ComplexMatrix out = dephase(off).rho();
  EXPECT_LT(oracle::max_abs(out - ComplexMatrix::Identity(4, 4) * 0.25), 1e-15);
}

TEST(Dephase, DiagonalInputUnchanged) {
  QutritStateParams p;
  const BipartiteSystem sys = two_qutrit_state(p);
  EXPECT_LT(oracle::max_abs(dephase(sys).rho() - sys.rho()), 0.0 + 1e-300);
}

TEST(PartialTranspose, ProductStateNonnegative) {
  const ComplexMatrix rho = kron(thermal_state(EnergySpectrum::two_level(), 1.0),
                                 thermal_state(EnergySpectrum({0.0, 1.0, 1.15}), 0.3));
  const BipartiteSystem sys(EnergySpectrum::two_level(), EnergySpectrum({0.0, 1.0, 1.15}), rho);
  EXPECT_GE(min_pt_eigenvalue(sys), 0.0);
  ASSERT_TRUE(ppt_separable(sys).has_value());
  const BipartiteSystem big = two_qutrit_state(QutritStateParams{});
  EXPECT_FALSE(ppt_separable(big).has_value());
}

TEST(BipartiteSystem, RejectsInvalidStates) {
  ComplexMatrix rho = ComplexMatrix::Identity(4, 4) * 0.3;
  EXPECT_THROW(BipartiteSystem(EnergySpectrum::two_level(), EnergySpectrum::two_level(), rho),
               InfeasibleParameters);
  rho = ComplexMatrix::Identity(4, 4) * 0.25;
  EXPECT_THROW(BipartiteSystem(EnergySpectrum::two_level(), EnergySpectrum::two_level(), rho, 1.0,
                               0.5),
               InfeasibleParameters);
  EXPECT_THROW(BipartiteSystem(EnergySpectrum::two_level(), EnergySpectrum({0.0, 1.0, 2.0}), rho),
               DimensionMismatch);
}

}  // namespace
}  // namespace qheat
