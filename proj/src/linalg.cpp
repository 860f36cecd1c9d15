// Copyright 2026 The qadv Authors.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "qadv/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qadv/errors.hpp"

namespace qadv {

double hermiticity_error(const ComplexMatrix &m) {
  if (m.rows() != m.cols()) {
    throw DimensionError("hermiticity_error: matrix is not square");
  }
  double worst = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = i; j < m.cols(); ++j) {
      worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
    }
  }
  return worst;
}

bool all_finite(const ComplexMatrix &m) {
  for (Eigen::Index k = 0; k < m.size(); ++k) {
    const Complex z = m.data()[k];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      return false;
    }
  }
  return true;
}

double spectral_norm(const ComplexMatrix &m) {
  if (m.size() == 0) {
    return 0.0;
  }
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues()(0);
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

HermitianEigen eig_hermitian(const ComplexMatrix &m, double tol) {
  if (m.rows() != m.cols()) {
    throw DimensionError("eig_hermitian: matrix is not square");
  }
  const double err = hermiticity_error(m);
  if (err > tol) {
    throw InvalidArgument("eig_hermitian: matrix is not Hermitian (deviation " +
                          std::to_string(err) + ")");
  }
  // Symmetrize so the solver sees an exactly Hermitian input.
  const ComplexMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("eig_hermitian: eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

ComplexMatrix matrix_sqrt_psd(const ComplexMatrix &m, double psd_slack) {
  const HermitianEigen eig = eig_hermitian(m);
  RealVector roots(eig.values.size());
  for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
    const double lambda = eig.values(k);
    if (lambda < -psd_slack) {
      throw InvalidArgument("matrix_sqrt_psd: eigenvalue " +
                            std::to_string(lambda) + " is negative");
    }
    roots(k) = std::sqrt(std::max(lambda, 0.0));
  }
  return eig.vectors * roots.asDiagonal() * eig.vectors.adjoint();
}

double trace_product_real(const ComplexMatrix &a, const ComplexMatrix &b) {
  if (a.rows() != b.cols() || a.cols() != b.rows()) {
    throw DimensionError("trace_product_real: shape mismatch");
  }
  // Tr(AB) = sum_ij A_ij B_ji; B Hermitian gives B_ji = conj(B_ij).
  double acc = 0.0;
  for (Eigen::Index k = 0; k < a.size(); ++k) {
    const Complex x = a.data()[k];
    const Complex y = b.data()[k];
    acc += x.real() * y.real() + x.imag() * y.imag();
  }
  return acc;
}

} // namespace qadv
