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
#pragma once

#include <complex>
#include <cstddef>
#include <span>

#include <Eigen/Dense>

namespace qadv {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Eigen-decomposition of a Hermitian matrix. Eigenvalues ascend; column k of
/// `vectors` belongs to `values[k]`.
struct HermitianEigen {
  RealVector values;
  ComplexMatrix vectors;
};

/// Largest entrywise |M - M^dagger|.
double hermiticity_error(const ComplexMatrix &m);

bool all_finite(const ComplexMatrix &m);

double spectral_norm(const ComplexMatrix &m);

/// Kronecker product with `a` on the more significant index.
ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);

/// Throws InvalidArgument when `m` is not square or deviates from Hermitian
/// by more than `tol`.
HermitianEigen eig_hermitian(const ComplexMatrix &m, double tol = 1e-8);

/// Principal square root of a Hermitian PSD matrix. Eigenvalues in
/// [-psd_slack, 0) are treated as zero; anything lower is an error.
ComplexMatrix matrix_sqrt_psd(const ComplexMatrix &m, double psd_slack = 1e-9);

/// Re Tr(A B) for Hermitian A and B, computed without forming the product.
double trace_product_real(const ComplexMatrix &a, const ComplexMatrix &b);

} // namespace qadv
