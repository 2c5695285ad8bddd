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

#include "qheat/scan/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qheat::scan {

namespace {

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

Complex gaussian_complex(Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  const double re = n(rng);
  const double im = n(rng);
  return {re, im};
}

ComplexMatrix ginibre(Rng& rng, int n) {
  ComplexMatrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = gaussian_complex(rng);
  return g;
}

}  // namespace

EnergySpectrum random_spectrum(Rng& rng, int d) {
  if (d == 2) return EnergySpectrum::two_level();
  if (d == 3) return EnergySpectrum({0.0, 1.0, uniform(rng, 1.1, 1.9)});
  for (;;) {
    std::vector<double> levels{0.0};
    for (int k = 1; k < d; ++k) levels.push_back(levels.back() + uniform(rng, 0.5, 1.5));
    EnergySpectrum s(levels);
    if (s.nondegenerate_bohr(1e-3)) return s;
  }
}

BipartiteSystem random_locally_thermal(Rng& rng, const EnergySpectrum& spectrum,
                                       const EnsembleOptions& opt) {
  const int d = spectrum.dimension();
  const double beta_hot = uniform(rng, opt.beta_min, opt.beta_max - opt.min_beta_gap);
  const double beta_cold = uniform(rng, beta_hot + opt.min_beta_gap, opt.beta_max);
  const std::vector<double> c = gibbs_populations(spectrum, beta_cold);
  const std::vector<double> h = gibbs_populations(spectrum, beta_hot);

  // Marginal-preserving directions: e_00 - e_0b - e_a0 + e_ab.
  std::vector<double> product(static_cast<std::size_t>(d * d));
  std::vector<double> shift(product.size(), 0.0);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      product[static_cast<std::size_t>(a * d + b)] =
          c[static_cast<std::size_t>(a)] * h[static_cast<std::size_t>(b)];
  for (int a = 1; a < d; ++a) {
    for (int b = 1; b < d; ++b) {
      const double w = uniform(rng, -1.0, 1.0);
      shift[0] += w;
      shift[static_cast<std::size_t>(b)] -= w;
      shift[static_cast<std::size_t>(a * d)] -= w;
      shift[static_cast<std::size_t>(a * d + b)] += w;
    }
  }
  double t_max = 1e300;
  for (std::size_t k = 0; k < product.size(); ++k) {
    if (shift[k] < 0) t_max = std::min(t_max, (1 - opt.population_floor) * product[k] / -shift[k]);
  }
  const double t = uniform(rng, 0.0, 1.0) * t_max;

  ComplexMatrix rho = ComplexMatrix::Zero(d * d, d * d);
  for (std::size_t k = 0; k < product.size(); ++k) {
    const auto i = static_cast<Eigen::Index>(k);
    rho(i, i) = product[k] + t * shift[k];
  }
  for (int n = 0; n < d; ++n) {
    for (int m = n + 1; m < d; ++m) {
      const int a = n * d + m, b = m * d + n;
      const double eta = uniform(rng, 0.0, opt.max_eta);
      const double xi = uniform(rng, 0.0, 2 * std::numbers::pi);
      const Complex v = std::polar(eta * std::sqrt(rho(a, a).real() * rho(b, b).real()), xi);
      rho(a, b) = v;
      rho(b, a) = std::conj(v);
    }
  }
  return BipartiteSystem(spectrum, spectrum, rho, beta_cold, beta_hot);
}

std::vector<ManifoldRotation> random_rotations(Rng& rng, int d) {
  std::vector<ManifoldRotation> out;
  const double two_pi = 2 * std::numbers::pi;
  for (int n = 0; n < d; ++n) {
    for (int m = n + 1; m < d; ++m) {
      ManifoldRotation r;
      r.n = n;
      r.m = m;
      r.theta = uniform(rng, 0.0, std::numbers::pi);
      r.phi = uniform(rng, 0.0, two_pi);
      r.lam = uniform(rng, 0.0, two_pi);
      r.kappa = uniform(rng, 0.0, two_pi);
      out.push_back(r);
    }
  }
  return out;
}

Instance random_instance(Rng& rng, int d, const EnsembleOptions& opt) {
  const EnergySpectrum spectrum = random_spectrum(rng, d);
  BipartiteSystem sys = random_locally_thermal(rng, spectrum, opt);
  std::vector<ManifoldRotation> rotations = random_rotations(rng, d);
  ComplexMatrix u = qudit_energy_preserving(spectrum, rotations).matrix;
  return {std::move(sys), std::move(rotations), std::move(u)};
}

ComplexMatrix random_density_matrix(Rng& rng, int n) {
  const ComplexMatrix g = ginibre(rng, n);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace();
  return 0.5 * (rho + rho.adjoint());
}

ComplexMatrix random_unitary(Rng& rng, int n) {
  const ComplexMatrix g = ginibre(rng, n);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, n);
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < n; ++k) {
    const Complex diag = r(k, k);
    q.col(k) *= diag / std::abs(diag);
  }
  return q;
}

}  // namespace qheat::scan
