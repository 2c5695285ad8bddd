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

#include "qheat/tensor_core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

#include "qheat/errors.hpp"

namespace qheat {

DimPair::DimPair(int d_cold, int d_hot) : cold(d_cold), hot(d_hot) {
  if (d_cold < 2 || d_hot < 2) {
    throw DimensionMismatch("local dimensions must be >= 2, got (" + std::to_string(d_cold) +
                            ", " + std::to_string(d_hot) + ")");
  }
}

namespace {

void require_joint_square(const ComplexMatrix& m, DimPair dims) {
  if (m.rows() != m.cols() || m.rows() != dims.joint()) {
    throw DimensionMismatch("expected a " + std::to_string(dims.joint()) + "x" +
                            std::to_string(dims.joint()) + " matrix, got " +
                            std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

void require_square(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) {
    throw DimensionMismatch("expected a square matrix, got " + std::to_string(m.rows()) + "x" +
                            std::to_string(m.cols()));
  }
}

}  // namespace

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const Eigen::Index br = b.rows();
  const Eigen::Index bc = b.cols();
  ComplexMatrix out(a.rows() * br, a.cols() * bc);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * br, j * bc, br, bc) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, DimPair dims, Subsystem traced) {
  require_joint_square(m, dims);
  const int dc = dims.cold;
  const int dh = dims.hot;
  if (traced == Subsystem::Hot) {
    ComplexMatrix out = ComplexMatrix::Zero(dc, dc);
    for (int a = 0; a < dc; ++a)
      for (int b = 0; b < dc; ++b)
        for (int k = 0; k < dh; ++k) out(a, b) += m(dims.index(a, k), dims.index(b, k));
    return out;
  }
  ComplexMatrix out = ComplexMatrix::Zero(dh, dh);
  for (int a = 0; a < dh; ++a)
    for (int b = 0; b < dh; ++b)
      for (int k = 0; k < dc; ++k) out(a, b) += m(dims.index(k, a), dims.index(k, b));
  return out;
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, DimPair dims, Subsystem which) {
  require_joint_square(m, dims);
  ComplexMatrix out(m.rows(), m.cols());
  for (int ic = 0; ic < dims.cold; ++ic)
    for (int ih = 0; ih < dims.hot; ++ih)
      for (int jc = 0; jc < dims.cold; ++jc)
        for (int jh = 0; jh < dims.hot; ++jh) {
          const Complex v = m(dims.index(ic, ih), dims.index(jc, jh));
          if (which == Subsystem::Hot) {
            out(dims.index(ic, jh), dims.index(jc, ih)) = v;
          } else {
            out(dims.index(jc, ih), dims.index(ic, jh)) = v;
          }
        }
  return out;
}

double hermiticity_defect(const ComplexMatrix& m) {
  require_square(m);
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
  const double defect = hermiticity_defect(m);
  if (defect > kHermitianTolerance) {
    throw NotHermitian("matrix deviates from its adjoint by " + std::to_string(defect));
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m, Eigen::EigenvaluesOnly);
  const RealVector& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

double spectral_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues()(0);
}

double trace_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues().sum();
}

ComplexMatrix exp_hermitian(const ComplexMatrix& h, Complex scale) {
  const double defect = hermiticity_defect(h);
  if (defect > kHermitianTolerance) {
    throw NotHermitian("exp_hermitian generator deviates from its adjoint by " +
                       std::to_string(defect));
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  const ComplexMatrix& v = solver.eigenvectors();
  Eigen::VectorXcd phases(solver.eigenvalues().size());
  for (Eigen::Index k = 0; k < phases.size(); ++k) {
    phases(k) = std::exp(scale * solver.eigenvalues()(k));
  }
  return v * phases.asDiagonal() * v.adjoint();
}

ComplexMatrix matrix_exp(const ComplexMatrix& m) {
  require_square(m);
  if (hermiticity_defect(m) <= kHermitianTolerance) {
    return exp_hermitian(0.5 * (m + m.adjoint()), 1.0);
  }
  if ((m + m.adjoint()).cwiseAbs().maxCoeff() <= kHermitianTolerance) {
    // M = -iK with K = iM Hermitian.
    const ComplexMatrix k = Complex(0, 1) * m;
    return exp_hermitian(0.5 * (k + k.adjoint()), Complex(0, -1));
  }
  return m.exp();
}

ComplexMatrix identity(int n) { return ComplexMatrix::Identity(n, n); }

}  // namespace qheat
