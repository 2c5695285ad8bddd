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

#include "qheat/probe_sim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qheat/errors.hpp"
#include "qheat/format.hpp"

namespace qheat {

namespace {

void check_target(DimPair dims, int c, int h) {
  if (c < 0 || c >= dims.cold || h < 0 || h >= dims.hot) {
    throw DimensionMismatch("probe target (" + std::to_string(c) + ", " + std::to_string(h) +
                            ") outside the level range");
  }
}

void check_eps(double eps) {
  if (!(eps > 0 && eps < std::numbers::pi / 2)) {
    throw PreconditionViolated("probe coupling must lie in (0, pi/2), got " + format_double(eps));
  }
}

// System (x) ancilla, ancilla last.
ComplexMatrix coupling(int d, int target) {
  ComplexMatrix v = ComplexMatrix::Identity(2 * d, 2 * d);
  v(2 * target + 1, 2 * target + 1) = -1.0;
  return v;
}

ComplexMatrix ancilla_state(double eps) {
  Eigen::Vector2cd a(std::cos(eps), -std::sin(eps));
  return a * a.adjoint();
}

Eigen::Vector2cd readout(int sign) {
  return Eigen::Vector2cd(1.0, static_cast<double>(sign)) / std::sqrt(2.0);
}

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

double uniform(std::uint64_t seed, std::uint64_t run, std::uint64_t shot) {
  const std::uint64_t h = splitmix(splitmix(splitmix(seed) ^ run) ^ shot);
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

std::vector<double> draw(const std::vector<double>& probs, std::int64_t shots,
                         std::uint64_t seed, std::uint64_t run) {
  std::vector<double> cdf(probs.size());
  double acc = 0;
  for (std::size_t k = 0; k < probs.size(); ++k) {
    acc += std::max(probs[k], 0.0);
    cdf[k] = acc;
  }
  std::vector<double> counts(probs.size(), 0.0);
  for (std::int64_t s = 0; s < shots; ++s) {
    const double x = uniform(seed, run, static_cast<std::uint64_t>(s)) * acc;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), x);
    if (it == cdf.end()) --it;
    counts[static_cast<std::size_t>(it - cdf.begin())] += 1;
  }
  for (auto& c : counts) c /= static_cast<double>(shots);
  return counts;
}

}  // namespace

std::pair<ComplexMatrix, ComplexMatrix> probe_effects(DimPair dims, int target_cold,
                                                      int target_hot, double eps) {
  check_target(dims, target_cold, target_hot);
  check_eps(eps);
  const int d = dims.joint();
  const ComplexMatrix v = coupling(d, dims.index(target_cold, target_hot));
  const Eigen::Vector2cd a(std::cos(eps), -std::sin(eps));
  auto effect = [&](int sign) {
    const Eigen::Vector2cd r = readout(sign);
    const ComplexMatrix m = kron(identity(d), r * r.adjoint());
    const ComplexMatrix full = v.adjoint() * m * v;
    ComplexMatrix e(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        Complex s = 0;
        for (int x = 0; x < 2; ++x)
          for (int y = 0; y < 2; ++y) s += std::conj(a(x)) * full(2 * i + x, 2 * j + y) * a(y);
        e(i, j) = s;
      }
    return e;
  };
  return {effect(+1), effect(-1)};
}

ProbeOutcomeStats probe_statistics(const BipartiteSystem& sys, const ComplexMatrix& u,
                                   int target_cold, int target_hot, double eps) {
  const DimPair dims = sys.dims();
  check_target(dims, target_cold, target_hot);
  check_eps(eps);
  const int d = dims.joint();
  if (u.rows() != d || u.cols() != d) throw DimensionMismatch("unitary does not match the state");

  const ComplexMatrix v = coupling(d, dims.index(target_cold, target_hot));
  const ComplexMatrix evolve = kron(u, identity(2)) * v;
  const ComplexMatrix final_state = evolve * kron(sys.rho(), ancilla_state(eps)) * evolve.adjoint();
  const ComplexMatrix undisturbed = u * sys.rho() * u.adjoint();

  ProbeOutcomeStats st{sys.cold(), sys.hot(), target_cold, target_hot, eps, {}, {}, {}};
  const Eigen::Vector2cd plus = readout(+1), minus = readout(-1);
  for (int f = 0; f < d; ++f) {
    const ComplexMatrix block = final_state.block(2 * f, 2 * f, 2, 2);
    st.q_plus.push_back((plus.adjoint() * block * plus)(0, 0).real());
    st.q_minus.push_back((minus.adjoint() * block * minus)(0, 0).real());
    st.p_undisturbed.push_back(undisturbed(f, f).real());
  }
  return st;
}

double probe_disturbance(const BipartiteSystem& sys, int target_cold, int target_hot, double eps) {
  const DimPair dims = sys.dims();
  check_target(dims, target_cold, target_hot);
  check_eps(eps);
  const int d = dims.joint();
  const ComplexMatrix v = coupling(d, dims.index(target_cold, target_hot));
  const ComplexMatrix joint = v * kron(sys.rho(), ancilla_state(eps)) * v.adjoint();
  ComplexMatrix reduced(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) reduced(i, j) = joint(2 * i, 2 * j) + joint(2 * i + 1, 2 * j + 1);
  return 0.5 * trace_norm(reduced - sys.rho());
}

std::vector<double> reconstruct_pw(const ProbeOutcomeStats& stats) {
  const double s = std::sin(2 * stats.epsilon);
  if (!(s > 1e-9)) {
    throw PreconditionViolated("sin(2 eps) = " + format_double(s) + " too small to invert");
  }
  std::vector<double> out(stats.q_plus.size());
  for (std::size_t f = 0; f < out.size(); ++f)
    out[f] = (stats.q_plus[f] - stats.q_minus[f]) / (2 * s) + 0.5 * stats.p_undisturbed[f];
  return out;
}

SampledReconstruction sampled_reconstruction(const ProbeOutcomeStats& stats, std::int64_t shots,
                                             std::uint64_t seed) {
  if (shots < 1) throw PreconditionViolated("need at least one shot");
  const double s = std::sin(2 * stats.epsilon);
  if (!(s > 1e-9)) {
    throw PreconditionViolated("sin(2 eps) = " + format_double(s) + " too small to invert");
  }
  const std::size_t d = stats.q_plus.size();
  // Probe run outcomes are laid out (+, f) then (-, f).
  std::vector<double> probe(2 * d);
  for (std::size_t f = 0; f < d; ++f) {
    probe[f] = stats.q_plus[f];
    probe[d + f] = stats.q_minus[f];
  }
  const std::vector<double> probe_freq = draw(probe, shots, seed, 0);
  SampledReconstruction out;
  out.freq_undisturbed = draw(stats.p_undisturbed, shots, seed, 1);
  out.freq_plus.assign(probe_freq.begin(), probe_freq.begin() + static_cast<std::ptrdiff_t>(d));
  out.freq_minus.assign(probe_freq.begin() + static_cast<std::ptrdiff_t>(d), probe_freq.end());

  const double n = static_cast<double>(shots);
  for (std::size_t f = 0; f < d; ++f) {
    const double qp = out.freq_plus[f], qm = out.freq_minus[f], pf = out.freq_undisturbed[f];
    out.value.push_back((qp - qm) / (2 * s) + 0.5 * pf);
    const double var_dq = (qp + qm - (qp - qm) * (qp - qm)) / n;
    const double var_pf = pf * (1 - pf) / n;
    out.std_error.push_back(std::sqrt(var_dq / (4 * s * s) + var_pf / 4));
  }
  return out;
}

void write_reconstruction_csv(std::ostream& os, const ProbeOutcomeStats& stats,
                              const std::vector<double>& values,
                              const std::vector<double>& std_errors) {
  const DimPair dims = stats.dims();
  os << "i_C,i_H,f_C,f_H,value,dE_C,dE_H,stderr\n";
  for (int f = 0; f < dims.joint(); ++f) {
    const auto k = static_cast<std::size_t>(f);
    os << stats.target_cold << ',' << stats.target_hot << ',' << f / dims.hot << ','
       << f % dims.hot << ',' << format_double(values[k]) << ','
       << format_double(stats.cold[f / dims.hot] - stats.cold[stats.target_cold]) << ','
       << format_double(stats.hot[f % dims.hot] - stats.hot[stats.target_hot]) << ','
       << format_double(k < std_errors.size() ? std_errors[k] : 0.0) << '\n';
  }
}

}  // namespace qheat
