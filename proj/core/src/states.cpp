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

#include "qheat/states.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <string>

#include "qheat/errors.hpp"

namespace qheat {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

double max_abs_diff_diag(const ComplexMatrix& m, const std::vector<double>& expected) {
  double worst = 0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const Complex target = (i == j) ? Complex(expected[static_cast<std::size_t>(i)], 0) : 0.0;
      worst = std::max(worst, std::abs(m(i, j) - target));
    }
  }
  return worst;
}

}  // namespace

EnergySpectrum::EnergySpectrum(std::vector<double> levels) : levels_(std::move(levels)) {
  if (levels_.size() < 2) {
    throw InfeasibleParameters("spectrum.size >= 2", "need at least two levels");
  }
  if (std::abs(levels_.front()) > 1e-12) {
    throw InfeasibleParameters("spectrum.E0 == 0", "ground level is " + fmt(levels_.front()));
  }
  for (std::size_t k = 0; k < levels_.size(); ++k) {
    if (!std::isfinite(levels_[k])) {
      throw InfeasibleParameters("spectrum.finite", "level " + std::to_string(k) + " not finite");
    }
    if (k > 0 && !(levels_[k] > levels_[k - 1])) {
      throw InfeasibleParameters("spectrum.ascending",
                                 "level " + std::to_string(k) + " is not above level " +
                                     std::to_string(k - 1));
    }
  }
}

EnergySpectrum EnergySpectrum::two_level(double gap) { return EnergySpectrum({0.0, gap}); }

bool EnergySpectrum::nondegenerate_bohr(double tol) const {
  std::vector<double> gaps;
  for (std::size_t n = 0; n < levels_.size(); ++n)
    for (std::size_t m = 0; m < n; ++m) gaps.push_back(levels_[n] - levels_[m]);
  std::sort(gaps.begin(), gaps.end());
  for (std::size_t k = 1; k < gaps.size(); ++k)
    if (gaps[k] - gaps[k - 1] <= tol) return false;
  return true;
}

ComplexMatrix EnergySpectrum::hamiltonian() const {
  ComplexMatrix h = ComplexMatrix::Zero(dimension(), dimension());
  for (int k = 0; k < dimension(); ++k) h(k, k) = (*this)[k];
  return h;
}

std::vector<double> gibbs_populations(const EnergySpectrum& spectrum, double beta) {
  if (!std::isfinite(beta)) throw PreconditionViolated("inverse temperature must be finite");
  std::vector<double> w(static_cast<std::size_t>(spectrum.dimension()));
  // E_0 = 0 is the minimum for beta >= 0; shift by the extreme level otherwise.
  const double shift = beta >= 0 ? spectrum[0] : spectrum[spectrum.dimension() - 1];
  double z = 0;
  for (int k = 0; k < spectrum.dimension(); ++k) {
    w[static_cast<std::size_t>(k)] = std::exp(-beta * (spectrum[k] - shift));
    z += w[static_cast<std::size_t>(k)];
  }
  for (double& x : w) x /= z;
  return w;
}

ComplexMatrix thermal_state(const EnergySpectrum& spectrum, double beta) {
  const auto p = gibbs_populations(spectrum, beta);
  ComplexMatrix rho = ComplexMatrix::Zero(spectrum.dimension(), spectrum.dimension());
  for (int k = 0; k < spectrum.dimension(); ++k) rho(k, k) = p[static_cast<std::size_t>(k)];
  return rho;
}

BipartiteSystem::BipartiteSystem(EnergySpectrum cold, EnergySpectrum hot, ComplexMatrix rho,
                                 std::optional<double> beta_cold, std::optional<double> beta_hot)
    : cold_(std::move(cold)),
      hot_(std::move(hot)),
      rho_(std::move(rho)),
      beta_cold_(beta_cold),
      beta_hot_(beta_hot),
      dims_(cold_.dimension(), hot_.dimension()) {
  if (rho_.rows() != dims_.joint() || rho_.cols() != dims_.joint()) {
    throw DimensionMismatch("density matrix is " + std::to_string(rho_.rows()) + "x" +
                            std::to_string(rho_.cols()) + ", spectra imply " +
                            std::to_string(dims_.joint()));
  }
  if (!rho_.allFinite()) throw InfeasibleParameters("rho.finite", "non-finite entry");
  if (beta_cold_.has_value() != beta_hot_.has_value()) {
    throw PreconditionViolated("give both inverse temperatures or neither");
  }
  const StateDiagnostics d = diagnose(*this);
  if (d.hermiticity_defect > kHermitianTolerance) {
    throw InfeasibleParameters("rho.hermitian", "defect " + fmt(d.hermiticity_defect));
  }
  if (d.trace_error > kHermitianTolerance) {
    throw InfeasibleParameters("rho.trace == 1", "trace error " + fmt(d.trace_error));
  }
  if (d.min_eigenvalue < -kPsdTolerance) {
    throw InfeasibleParameters("rho >= 0", "min eigenvalue " + fmt(d.min_eigenvalue));
  }
  if (d.cold_marginal_error > kMarginalTolerance) {
    throw InfeasibleParameters("rho_C thermal", "marginal error " + fmt(d.cold_marginal_error));
  }
  if (d.hot_marginal_error > kMarginalTolerance) {
    throw InfeasibleParameters("rho_H thermal", "marginal error " + fmt(d.hot_marginal_error));
  }
}

ComplexMatrix BipartiteSystem::cold_hamiltonian() const {
  return kron(cold_.hamiltonian(), identity(hot_.dimension()));
}

ComplexMatrix BipartiteSystem::hot_hamiltonian() const {
  return kron(identity(cold_.dimension()), hot_.hamiltonian());
}

ComplexMatrix BipartiteSystem::total_hamiltonian() const {
  return cold_hamiltonian() + hot_hamiltonian();
}

double BipartiteSystem::total_energy(int joint_index) const {
  return cold_[joint_index / dims_.hot] + hot_[joint_index % dims_.hot];
}

BipartiteSystem BipartiteSystem::with_rho(ComplexMatrix rho, bool keep_betas) const {
  if (keep_betas) return BipartiteSystem(cold_, hot_, std::move(rho), beta_cold_, beta_hot_);
  return BipartiteSystem(cold_, hot_, std::move(rho));
}

StateDiagnostics diagnose(const BipartiteSystem& sys) {
  StateDiagnostics d;
  const ComplexMatrix& rho = sys.rho();
  d.trace_error = std::abs(rho.trace() - Complex(1.0, 0.0));
  d.hermiticity_defect = hermiticity_defect(rho);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(0.5 * (rho + rho.adjoint()),
                                                      Eigen::EigenvaluesOnly);
  d.min_eigenvalue = solver.eigenvalues().minCoeff();
  if (sys.beta_cold() && sys.beta_hot()) {
    d.cold_marginal_error =
        max_abs_diff_diag(partial_trace(rho, sys.dims(), Subsystem::Hot),
                          gibbs_populations(sys.cold(), *sys.beta_cold()));
    d.hot_marginal_error =
        max_abs_diff_diag(partial_trace(rho, sys.dims(), Subsystem::Cold),
                          gibbs_populations(sys.hot(), *sys.beta_hot()));
  }
  return d;
}

// ---------------------------------------------------------------------------
// Two qubits

namespace {

struct QubitMarginals {
  double inv_zc;  // 1/z_C, ground population of C
  double inv_zh;
};

QubitMarginals qubit_marginals(double beta_cold, double beta_hot, double gap) {
  return {1.0 / (1.0 + std::exp(-beta_cold * gap)), 1.0 / (1.0 + std::exp(-beta_hot * gap))};
}

constexpr double kBoundSlack = 1e-12;

}  // namespace

TwoQubitBounds two_qubit_population_bounds(double beta_cold, double beta_hot, double gap) {
  const auto [pc, ph] = qubit_marginals(beta_cold, beta_hot, gap);
  // (z_C + z_H - z_C z_H)/(z_C z_H) = 1/z_C + 1/z_H - 1
  return {std::max(0.0, pc + ph - 1.0), std::min(pc, ph)};
}

double two_qubit_eta_cap(const TwoQubitParams& p) {
  const auto [pc, ph] = qubit_marginals(p.beta_cold, p.beta_hot, p.gap);
  const double a = pc - p.p00;
  const double b = ph - p.p00;
  if (a <= 0 || b <= 0) return 0.0;
  return std::sqrt(a * b);
}

BipartiteSystem two_qubit_state(const TwoQubitParams& p) {
  const auto [pc, ph] = qubit_marginals(p.beta_cold, p.beta_hot, p.gap);
  if (p.p00 > ph + kBoundSlack) {
    throw InfeasibleParameters("P00 <= 1/z_H", "P00 = " + fmt(p.p00) + ", 1/z_H = " + fmt(ph));
  }
  if (p.p00 > pc + kBoundSlack) {
    throw InfeasibleParameters("P00 <= 1/z_C", "P00 = " + fmt(p.p00) + ", 1/z_C = " + fmt(pc));
  }
  if (p.p00 < pc + ph - 1.0 - kBoundSlack) {
    throw InfeasibleParameters("P00 >= (z_C + z_H - z_C z_H)/(z_C z_H)",
                               "P00 = " + fmt(p.p00) + ", bound = " + fmt(pc + ph - 1.0));
  }
  if (p.p00 < -kBoundSlack) {
    throw InfeasibleParameters("P00 >= 0", "P00 = " + fmt(p.p00));
  }
  const double cap = two_qubit_eta_cap(p);
  if (std::abs(p.eta) > cap + kBoundSlack) {
    throw InfeasibleParameters("|eta| <= sqrt((1/z_C - P00)(1/z_H - P00))",
                               "eta = " + fmt(p.eta) + ", cap = " + fmt(cap));
  }
  ComplexMatrix rho = ComplexMatrix::Zero(4, 4);
  rho(0, 0) = p.p00;
  rho(1, 1) = pc - p.p00;
  rho(2, 2) = ph - p.p00;
  rho(3, 3) = 1.0 - pc - ph + p.p00;
  rho(1, 2) = std::polar(p.eta, p.xi);
  rho(2, 1) = std::conj(rho(1, 2));
  return BipartiteSystem(EnergySpectrum::two_level(p.gap), EnergySpectrum::two_level(p.gap),
                         std::move(rho), p.beta_cold, p.beta_hot);
}

BipartiteSystem experiment_state(const ExperimentStateParams& p) {
  const auto cold = EnergySpectrum::two_level(p.gap_cold);
  const auto hot = EnergySpectrum::two_level(p.gap_hot);
  ComplexMatrix rho = kron(thermal_state(cold, p.beta_cold), thermal_state(hot, p.beta_hot));
  // Hot-first |01> = (H=0, C=1) is C-major index 2; hot-first |10> is index 1.
  rho(2, 1) += p.gamma;
  rho(1, 2) += std::conj(p.gamma);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(rho, Eigen::EigenvaluesOnly);
  const double min_ev = solver.eigenvalues().minCoeff();
  if (min_ev < -kPsdTolerance) {
    throw InfeasibleParameters("rho >= 0", "|gamma| = " + fmt(std::abs(p.gamma)) +
                                               " too large, min eigenvalue " + fmt(min_ev));
  }
  return BipartiteSystem(cold, hot, std::move(rho), p.beta_cold, p.beta_hot);
}

// ---------------------------------------------------------------------------
// Two qutrits

std::array<double, 9> qutrit_populations(const QutritStateParams& p) {
  const EnergySpectrum spec({0.0, p.e1, p.e2});
  const auto c = gibbs_populations(spec, p.beta_cold);
  const auto h = gibbs_populations(spec, p.beta_hot);
  std::array<double, 9> r{};
  r[0] = p.rho0;
  r[5] = p.rho5;
  r[7] = p.rho7;
  r[8] = p.rho8;
  r[6] = c[2] - r[7] - r[8];  // C = 2 row
  r[2] = h[2] - r[5] - r[8];  // H = 2 column
  r[1] = c[0] - r[0] - r[2];  // C = 0 row
  r[3] = h[0] - r[0] - r[6];  // H = 0 column
  r[4] = c[1] - r[3] - r[5];  // C = 1 row
  return r;
}

BipartiteSystem two_qutrit_state(const QutritStateParams& p) {
  const EnergySpectrum spec({0.0, p.e1, p.e2});
  const auto pops = qutrit_populations(p);
  for (std::size_t k = 0; k < pops.size(); ++k) {
    if (pops[k] < -kPsdTolerance) {
      throw InfeasibleParameters("population[" + std::to_string(k) + "] >= 0",
                                 "value " + fmt(pops[k]));
    }
  }
  const std::array<std::array<int, 2>, 3> manifolds{{{1, 3}, {2, 6}, {5, 7}}};
  const std::array<double, 3> etas{p.eta13, p.eta26, p.eta57};
  const std::array<double, 3> xis{p.xi13, p.xi26, p.xi57};
  ComplexMatrix rho = ComplexMatrix::Zero(9, 9);
  for (int k = 0; k < 9; ++k) rho(k, k) = std::max(0.0, pops[static_cast<std::size_t>(k)]);
  for (std::size_t q = 0; q < manifolds.size(); ++q) {
    if (etas[q] < 0 || etas[q] > 1) {
      throw InfeasibleParameters("eta in [0, 1]", "manifold " + std::to_string(q) + " eta " +
                                                      fmt(etas[q]));
    }
    const int a = manifolds[q][0];
    const int b = manifolds[q][1];
    rho(a, b) = std::polar(etas[q] * std::sqrt(rho(a, a).real() * rho(b, b).real()), xis[q]);
    rho(b, a) = std::conj(rho(a, b));
  }
  return BipartiteSystem(spec, spec, std::move(rho), p.beta_cold, p.beta_hot);
}

// ---------------------------------------------------------------------------
// General qudits

BipartiteSystem qudit_locally_thermal(const QuditStateParams& p) {
  const int d = p.cold.dimension();
  if (p.hot.dimension() != d) {
    throw DimensionMismatch("exchange-manifold states need equal local dimensions");
  }
  if (!p.cold.nondegenerate_bohr() || !p.hot.nondegenerate_bohr()) {
    throw DegenerateSpectrum("qudit_locally_thermal requires a nondegenerate Bohr spectrum");
  }
  const DimPair dims(d, d);
  const int n_joint = dims.joint();
  for (const auto& [idx, value] : p.free_populations) {
    if (idx < 0 || idx >= n_joint) {
      throw InfeasibleParameters("free population index", "index " + std::to_string(idx) +
                                                              " outside [0, " +
                                                              std::to_string(n_joint) + ")");
    }
  }
  std::vector<int> unknown;
  for (int k = 0; k < n_joint; ++k)
    if (!p.free_populations.contains(k)) unknown.push_back(k);

  const auto c = gibbs_populations(p.cold, p.beta_cold);
  const auto h = gibbs_populations(p.hot, p.beta_hot);

  // Row n: sum_m rho_{nd+m} = c_n; column m: sum_n rho_{nd+m} = h_m.
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2 * d, static_cast<Eigen::Index>(unknown.size()));
  Eigen::VectorXd rhs(2 * d);
  for (int n = 0; n < d; ++n) rhs(n) = c[static_cast<std::size_t>(n)];
  for (int m = 0; m < d; ++m) rhs(d + m) = h[static_cast<std::size_t>(m)];
  for (const auto& [idx, value] : p.free_populations) {
    rhs(idx / d) -= value;
    rhs(d + idx % d) -= value;
  }
  for (std::size_t u = 0; u < unknown.size(); ++u) {
    const int idx = unknown[u];
    a(idx / d, static_cast<Eigen::Index>(u)) = 1.0;
    a(d + idx % d, static_cast<Eigen::Index>(u)) = 1.0;
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
  qr.setThreshold(1e-10);
  if (qr.rank() != static_cast<Eigen::Index>(unknown.size())) {
    throw InfeasibleParameters("free population set",
                               "remaining populations are not uniquely determined (" +
                                   std::to_string(unknown.size()) + " unknowns, rank " +
                                   std::to_string(qr.rank()) + ")");
  }
  const Eigen::VectorXd x = qr.solve(rhs);
  if ((a * x - rhs).cwiseAbs().maxCoeff() > 1e-10) {
    throw InfeasibleParameters("marginal constraints", "free populations inconsistent with marginals");
  }
  std::vector<double> pops(static_cast<std::size_t>(n_joint));
  for (const auto& [idx, value] : p.free_populations) pops[static_cast<std::size_t>(idx)] = value;
  for (std::size_t u = 0; u < unknown.size(); ++u)
    pops[static_cast<std::size_t>(unknown[u])] = x(static_cast<Eigen::Index>(u));
  for (int k = 0; k < n_joint; ++k) {
    if (pops[static_cast<std::size_t>(k)] < -kPsdTolerance) {
      throw InfeasibleParameters("population[" + std::to_string(k) + "] >= 0",
                                 "value " + fmt(pops[static_cast<std::size_t>(k)]));
    }
  }

  ComplexMatrix rho = ComplexMatrix::Zero(n_joint, n_joint);
  for (int k = 0; k < n_joint; ++k) rho(k, k) = std::max(0.0, pops[static_cast<std::size_t>(k)]);
  std::set<std::pair<int, int>> seen;
  for (const auto& coh : p.coherences) {
    if (coh.n < 0 || coh.m >= d || coh.n >= coh.m) {
      throw InfeasibleParameters("coherence manifold (n < m < d)",
                                 "got (" + std::to_string(coh.n) + ", " + std::to_string(coh.m) + ")");
    }
    if (!seen.insert({coh.n, coh.m}).second) {
      throw InfeasibleParameters("coherence manifold unique",
                                 "duplicate (" + std::to_string(coh.n) + ", " +
                                     std::to_string(coh.m) + ")");
    }
    if (coh.eta < 0 || coh.eta > 1) {
      throw InfeasibleParameters("eta in [0, 1]", "eta " + fmt(coh.eta));
    }
    const int ia = dims.index(coh.n, coh.m);
    const int ib = dims.index(coh.m, coh.n);
    rho(ia, ib) = std::polar(coh.eta * std::sqrt(rho(ia, ia).real() * rho(ib, ib).real()), coh.xi);
    rho(ib, ia) = std::conj(rho(ia, ib));
  }
  return BipartiteSystem(p.cold, p.hot, std::move(rho), p.beta_cold, p.beta_hot);
}

// ---------------------------------------------------------------------------

BipartiteSystem dephase(const BipartiteSystem& sys, DephasingBasis basis) {
  ComplexMatrix out = sys.rho();
  const int n = sys.dims().joint();
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (a == b) continue;
      const bool keep = basis == DephasingBasis::TotalEnergy &&
                        std::abs(sys.total_energy(a) - sys.total_energy(b)) <= kBohrTolerance;
      if (!keep) out(a, b) = 0.0;
    }
  }
  return sys.with_rho(std::move(out), true);
}

double min_pt_eigenvalue(const BipartiteSystem& sys) {
  const ComplexMatrix pt = partial_transpose(sys.rho(), sys.dims(), Subsystem::Hot);
  return hermitian_eigenvalues(pt).front();
}

std::optional<bool> ppt_separable(const BipartiteSystem& sys) {
  if (sys.dims().joint() > 6) return std::nullopt;
  return min_pt_eigenvalue(sys) >= -kPsdTolerance;
}

}  // namespace qheat
