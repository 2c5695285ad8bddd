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

#include "qheat/fluctuations.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qheat/errors.hpp"
#include "qheat/format.hpp"

namespace qheat {

namespace {

void require_same_dims(const BipartiteSystem& sys, const ComplexMatrix& u) {
  const int d = sys.dims().joint();
  if (u.rows() != d || u.cols() != d) {
    throw DimensionMismatch("unitary is " + std::to_string(u.rows()) + "x" +
                            std::to_string(u.cols()) + ", state space has dimension " +
                            std::to_string(d));
  }
}

// Diagonal of the reduced state of one side.
std::vector<double> marginal_populations(const BipartiteSystem& sys, Subsystem keep) {
  const Subsystem traced = keep == Subsystem::Cold ? Subsystem::Hot : Subsystem::Cold;
  const ComplexMatrix r = partial_trace(sys.rho(), sys.dims(), traced);
  std::vector<double> out(static_cast<std::size_t>(r.rows()));
  for (Eigen::Index k = 0; k < r.rows(); ++k) out[static_cast<std::size_t>(k)] = r(k, k).real();
  return out;
}

double largest_level(const BipartiteSystem& sys) {
  return std::max(sys.cold().levels().back(), sys.hot().levels().back());
}

double require_beta_gap(const BipartiteSystem& sys) {
  if (!sys.beta_cold() || !sys.beta_hot()) {
    throw PreconditionViolated("inverse temperatures of both subsystems are required");
  }
  return *sys.beta_cold() - *sys.beta_hot();
}

void require_equal_spectra(const BipartiteSystem& sys) {
  if (!(sys.cold() == sys.hot())) {
    throw PreconditionViolated("closed forms need identical cold and hot spectra");
  }
}

}  // namespace

const char* to_string(TableKind kind) {
  return kind == TableKind::Tpm ? "tpm" : "mh";
}

TransitionTable::TransitionTable(TableKind kind, EnergySpectrum cold, EnergySpectrum hot,
                                 std::vector<double> entries)
    : kind_(kind),
      cold_(std::move(cold)),
      hot_(std::move(hot)),
      dims_(cold_.dimension(), hot_.dimension()),
      entries_(std::move(entries)) {
  const auto d = static_cast<std::size_t>(dims_.joint());
  if (entries_.size() != d * d) {
    throw DimensionMismatch("transition table needs " + std::to_string(d * d) + " entries, got " +
                            std::to_string(entries_.size()));
  }
}

double TransitionTable::delta_e_cold(int initial, int final) const {
  return cold_[final / dims_.hot] - cold_[initial / dims_.hot];
}

double TransitionTable::delta_e_hot(int initial, int final) const {
  return hot_[final % dims_.hot] - hot_[initial % dims_.hot];
}

double TransitionTable::sum() const { return std::accumulate(entries_.begin(), entries_.end(), 0.0); }

double TransitionTable::min() const { return *std::min_element(entries_.begin(), entries_.end()); }

TransitionTable tpm_distribution(const BipartiteSystem& sys, const ComplexMatrix& u) {
  require_same_dims(sys, u);
  const int d = sys.dims().joint();
  std::vector<double> p(static_cast<std::size_t>(d * d));
  for (int i = 0; i < d; ++i) {
    const double pop = sys.rho()(i, i).real();
    for (int f = 0; f < d; ++f) p[static_cast<std::size_t>(i * d + f)] = std::norm(u(f, i)) * pop;
  }
  return TransitionTable(TableKind::Tpm, sys.cold(), sys.hot(), std::move(p));
}

TransitionTable mh_distribution(const BipartiteSystem& sys, const ComplexMatrix& u) {
  require_same_dims(sys, u);
  const int d = sys.dims().joint();
  // Re[U_fi (rho U^dag)_if]
  const ComplexMatrix rho_udag = sys.rho() * u.adjoint();
  std::vector<double> p(static_cast<std::size_t>(d * d));
  for (int i = 0; i < d; ++i)
    for (int f = 0; f < d; ++f) p[static_cast<std::size_t>(i * d + f)] = (u(f, i) * rho_udag(i, f)).real();
  return TransitionTable(TableKind::MargenauHill, sys.cold(), sys.hot(), std::move(p));
}

MarginalDeviation marginal_check(const TransitionTable& table, const BipartiteSystem& sys,
                                 const ComplexMatrix& u) {
  require_same_dims(sys, u);
  const int d = sys.dims().joint();
  if (table.dims().joint() != d) throw DimensionMismatch("table and state dimensions differ");
  const ComplexMatrix evolved = u * sys.rho() * u.adjoint();
  MarginalDeviation dev;
  for (int i = 0; i < d; ++i) {
    double row = 0, col = 0;
    for (int f = 0; f < d; ++f) {
      row += table.at(i, f);
      col += table.at(f, i);
    }
    dev.initial = std::max(dev.initial, std::abs(row - sys.rho()(i, i).real()));
    dev.final = std::max(dev.final, std::abs(col - evolved(i, i).real()));
  }
  return dev;
}

double heat_direct(const BipartiteSystem& sys, const ComplexMatrix& u) {
  require_same_dims(sys, u);
  const ComplexMatrix hc = sys.cold_hamiltonian();
  const ComplexMatrix evolved = u * sys.rho() * u.adjoint();
  return (sys.rho() * hc).trace().real() - (evolved * hc).trace().real();
}

double heat_from_table(const TransitionTable& table) {
  const int d = table.dims().joint();
  double q = 0;
  for (int i = 0; i < d; ++i)
    for (int f = 0; f < d; ++f) q -= table.at(i, f) * table.delta_e_cold(i, f);
  return q;
}

FlowDecomposition decompose_flows(const TransitionTable& table) {
  const int d = table.dims().joint();
  FlowDecomposition out;
  auto pos = [](double p) { return p > 0 ? p : 0.0; };
  auto neg = [](double p) { return p < 0 ? -p : 0.0; };
  for (int i = 0; i < d; ++i) {
    for (int f = 0; f < d; ++f) {
      const double p = table.at(i, f);
      if (p < -kNegligibleWeight) out.negative_entries.push_back({i, f, p});
      const double loss = -table.delta_e_cold(i, f);  // E^C_i - E^C_f
      if (loss <= 0) continue;
      out.back += (pos(p) + neg(table.at(f, i))) * loss;
      out.direct += (pos(table.at(f, i)) + neg(p)) * loss;
    }
  }
  out.total = out.back - out.direct;
  return out;
}

HeatReport heat_report(const BipartiteSystem& sys, const ComplexMatrix& u) {
  const FlowDecomposition flows = decompose_flows(mh_distribution(sys, u));
  HeatReport r;
  r.q = flows.total;
  r.q_tpm = heat_from_table(tpm_distribution(sys, u));
  r.q_back = flows.back;
  r.q_direct = flows.direct;
  r.negative_entries = flows.negative_entries;
  return r;
}

namespace {

struct ManifoldTerms {
  int a;  // |n m>
  int b;  // |m n>
  double pop_a;
  double pop_b;
  double coherence;  // |rho_ab| sin(2 theta) cos(arg rho_ab + phi + lam)
  double s2;
};

ManifoldTerms manifold_terms(const BipartiteSystem& sys, const ManifoldRotation& r) {
  const int d = sys.cold().dimension();
  if (r.n < 0 || r.m >= d || r.n >= r.m) {
    throw InfeasibleParameters("rotation.manifold", "need 0 <= n < m < d");
  }
  ManifoldTerms t{};
  t.a = r.n * d + r.m;
  t.b = r.m * d + r.n;
  t.pop_a = sys.rho()(t.a, t.a).real();
  t.pop_b = sys.rho()(t.b, t.b).real();
  const Complex c = sys.rho()(t.a, t.b);
  t.coherence = std::abs(c) * std::sin(2 * r.theta) * std::cos(std::arg(c) + r.phi + r.lam);
  t.s2 = std::sin(r.theta) * std::sin(r.theta);
  return t;
}

}  // namespace

std::vector<ExchangeEntry> qudit_closed_form_pw(const BipartiteSystem& sys,
                                                std::span<const ManifoldRotation> rotations) {
  require_equal_spectra(sys);
  const int d = sys.cold().dimension();
  std::vector<ExchangeEntry> out;
  for (int n = 0; n < d; ++n)
    for (int m = 0; m < d; ++m)
      if (n != m) out.push_back({n, m, 0.0, 0.0});
  auto slot = [&](int n, int m) -> ExchangeEntry& {
    for (auto& e : out)
      if (e.n == n && e.m == m) return e;
    throw DimensionMismatch("no exchange entry");
  };
  for (const auto& r : rotations) {
    const ManifoldTerms t = manifold_terms(sys, r);
    // E_n < E_m: the lower-energy C level is initially occupied in |n m>.
    ExchangeEntry& up = slot(r.n, r.m);
    up.tpm = t.pop_a * t.s2;
    up.mh = up.tpm + 0.5 * t.coherence;
    ExchangeEntry& down = slot(r.m, r.n);
    down.tpm = t.pop_b * t.s2;
    down.mh = down.tpm - 0.5 * t.coherence;
  }
  return out;
}

double qudit_closed_form_delta_q(const BipartiteSystem& sys,
                                 std::span<const ManifoldRotation> rotations) {
  require_equal_spectra(sys);
  double dq = 0;
  for (const auto& r : rotations) {
    const ManifoldTerms t = manifold_terms(sys, r);
    dq -= t.coherence * (sys.cold()[r.m] - sys.cold()[r.n]);
  }
  return dq;
}

double delta_q_max(const BipartiteSystem& sys) {
  require_equal_spectra(sys);
  const int d = sys.cold().dimension();
  double total = 0;
  for (int n = 0; n < d; ++n)
    for (int m = n + 1; m < d; ++m)
      total += std::abs(sys.rho()(n * d + m, m * d + n)) * (sys.cold()[m] - sys.cold()[n]);
  return total;
}

TwoQubitClosedForm two_qubit_closed_form(const TwoQubitParams& state, double theta, double lam,
                                         double phi) {
  const double inv_zc = 1.0 / (1.0 + std::exp(-state.beta_cold * state.gap));
  const double inv_zh = 1.0 / (1.0 + std::exp(-state.beta_hot * state.gap));
  const double s = std::sin(theta), c = std::cos(theta);
  const double coh = state.eta * s * c * std::cos(state.xi + lam + phi);
  TwoQubitClosedForm out;
  out.tpm_01_10 = (inv_zc - state.p00) * s * s;
  out.tpm_10_01 = (inv_zh - state.p00) * s * s;
  out.mh_01_10 = out.tpm_01_10 + coh;
  out.mh_10_01 = out.tpm_10_01 - coh;
  const double thermal = 1.0 / (1.0 + std::exp(state.beta_cold * state.gap)) -
                         1.0 / (1.0 + std::exp(state.beta_hot * state.gap));
  out.q_tpm = state.gap * s * s * thermal;
  out.q = out.q_tpm - state.gap * state.eta * std::sin(2 * theta) * std::cos(state.xi + lam + phi);
  return out;
}

double chi_bar(const BipartiteSystem& sys, const ComplexMatrix& u) {
  require_same_dims(sys, u);
  const int d = sys.dims().joint();
  const ComplexMatrix& rho = sys.rho();
  double total = 0;
  for (int k = 0; k < d; ++k) {
    const double pk = rho(k, k).real();
    for (int m = 0; m < d; ++m) {
      if (m == k) continue;
      for (int l = 0; l < d; ++l) {
        const double term = (rho(k, m) * u(l, k) * std::conj(u(l, m))).real();
        const double weight = rho(l, l).real();
        if (std::abs(term) * weight <= 1e-15) continue;
        if (pk <= kNegligibleWeight) {
          throw DivergentQuantity("coherence weight divides by vanishing population of level " +
                                  std::to_string(k));
        }
        total += weight / pk * term;
      }
    }
  }
  return total;
}

XftReport xft_lhs(const TransitionTable& table, const BipartiteSystem& sys, const ComplexMatrix& u,
                  std::optional<double> energy_mismatch) {
  const double dbeta = require_beta_gap(sys);
  const int d = sys.dims().joint();
  if (table.dims().joint() != d) throw DimensionMismatch("table and state dimensions differ");
  const std::vector<double> pc = marginal_populations(sys, Subsystem::Cold);
  const std::vector<double> ph = marginal_populations(sys, Subsystem::Hot);
  const int dh = sys.dims().hot;
  const double strict = 1e-9 * std::max(1.0, largest_level(sys));
  const double allowed = std::max(strict, energy_mismatch.value_or(0.0));

  auto info = [&](int idx) {
    const double pop = sys.rho()(idx, idx).real();
    const double prod = pc[static_cast<std::size_t>(idx / dh)] * ph[static_cast<std::size_t>(idx % dh)];
    if (pop <= kNegligibleWeight || prod <= kNegligibleWeight) {
      throw DivergentQuantity("mutual-information density needs log of vanishing population at level " +
                              std::to_string(idx));
    }
    return std::log(pop / prod);
  };

  XftReport r;
  for (int i = 0; i < d; ++i) {
    for (int f = 0; f < d; ++f) {
      const double p = table.at(i, f);
      if (std::abs(p) <= kNegligibleWeight) continue;
      const double mismatch = std::abs(table.delta_e_cold(i, f) + table.delta_e_hot(i, f));
      if (mismatch > allowed) {
        throw PreconditionViolated("transition " + std::to_string(i) + " -> " + std::to_string(f) +
                                   " is off resonance by " + format_double(mismatch));
      }
      if (mismatch > strict) r.resonance_ok = false;
      const double di = info(f) - info(i);
      r.avg_delta_i += p * di;
      r.lhs += p * std::exp(di - dbeta * table.delta_e_cold(i, f));
    }
  }
  r.chi_bar = chi_bar(sys, u);
  return r;
}

JReport j_term(const BipartiteSystem& sys, const ComplexMatrix& u) {
  require_same_dims(sys, u);
  const DimPair dims = sys.dims();
  const int d = dims.joint();
  const ComplexMatrix rc = partial_trace(sys.rho(), dims, Subsystem::Hot);
  const ComplexMatrix rh = partial_trace(sys.rho(), dims, Subsystem::Cold);
  const ComplexMatrix product = kron(rc, rh);
  const ComplexMatrix correlation = sys.rho() - product;

  ComplexMatrix c = ComplexMatrix::Zero(d, d);
  ComplexMatrix q = ComplexMatrix::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    const double w = rc(i / dims.hot, i / dims.hot).real() * rh(i % dims.hot, i % dims.hot).real();
    if (w <= kNegligibleWeight) {
      throw DivergentQuantity("marginal product vanishes at level " + std::to_string(i));
    }
    // Pi_i X Pi_i keeps entry (i, i); Pi_i rho Pi_i^perp keeps row i off the diagonal.
    c(i, i) = correlation(i, i) / w;
    for (int k = 0; k < d; ++k)
      if (k != i) q(i, k) = sys.rho()(i, k) / w;
  }
  JReport r;
  r.j = (u.adjoint() * product * u * (c + q)).trace().real();
  r.c_norm = spectral_norm(c);
  r.q_norm = spectral_norm(q);
  return r;
}

double average_exp_heat(const TransitionTable& table, double beta_cold, double beta_hot) {
  const int d = table.dims().joint();
  double total = 0;
  for (int i = 0; i < d; ++i)
    for (int f = 0; f < d; ++f)
      total += table.at(i, f) * std::exp(-(beta_cold - beta_hot) * table.delta_e_cold(i, f));
  return total;
}

void write_table_csv(std::ostream& os, const TransitionTable& table) {
  const int d = table.dims().joint();
  const int dh = table.dims().hot;
  os << "i_C,i_H,f_C,f_H,value,dE_C,dE_H\n";
  for (int i = 0; i < d; ++i) {
    for (int f = 0; f < d; ++f) {
      os << i / dh << ',' << i % dh << ',' << f / dh << ',' << f % dh << ','
         << format_double(table.at(i, f)) << ',' << format_double(table.delta_e_cold(i, f)) << ','
         << format_double(table.delta_e_hot(i, f)) << '\n';
    }
  }
}

}  // namespace qheat
