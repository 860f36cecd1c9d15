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
#include "qadv/state.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qadv/errors.hpp"

namespace qadv {
namespace {

std::size_t qubits_for_dim(Eigen::Index dim) {
  std::size_t n = 0;
  while ((Eigen::Index{1} << n) < dim) {
    ++n;
  }
  if ((Eigen::Index{1} << n) != dim) {
    throw DimensionError("dimension " + std::to_string(dim) + " is not a power of two");
  }
  return n;
}

// Square root of a PSD operator with numerically-zero eigenvalues snapped to
// exactly zero; keeps fidelities of rank-deficient states from picking up
// sqrt(1e-17) noise.
ComplexMatrix psd_root(const ComplexMatrix &m) {
  const HermitianEigen eig = eig_hermitian(m, 1e-8);
  RealVector roots(eig.values.size());
  for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
    const double lambda = eig.values(k);
    roots(k) = lambda > 1e-14 ? std::sqrt(lambda) : 0.0;
  }
  return eig.vectors * roots.asDiagonal() * eig.vectors.adjoint();
}

} // namespace

PureState PureState::from_amplitudes(ComplexVector amplitudes) {
  const std::size_t n = qubits_for_dim(amplitudes.size());
  for (Eigen::Index k = 0; k < amplitudes.size(); ++k) {
    if (!std::isfinite(amplitudes(k).real()) || !std::isfinite(amplitudes(k).imag())) {
      throw InvalidStateError("PureState: non-finite amplitude");
    }
  }
  const double norm2 = amplitudes.squaredNorm();
  if (std::abs(norm2 - 1.0) > kNormTolerance) {
    throw InvalidStateError("PureState: squared norm " + std::to_string(norm2) + " is not 1");
  }
  return PureState(n, std::move(amplitudes));
}

PureState PureState::basis(std::size_t num_qubits, std::size_t index) {
  const std::size_t dim = dimension_of(num_qubits);
  if (index >= dim) {
    throw InvalidArgument("PureState::basis: index out of range");
  }
  ComplexVector a = ComplexVector::Zero(static_cast<Eigen::Index>(dim));
  a(static_cast<Eigen::Index>(index)) = 1.0;
  return PureState(num_qubits, std::move(a));
}

PureState PureState::from_trusted(std::size_t num_qubits, ComplexVector amplitudes) {
  return PureState(num_qubits, std::move(amplitudes));
}

DensityMatrix DensityMatrix::from_matrix(const ComplexMatrix &m) {
  if (m.rows() != m.cols()) {
    throw DimensionError("DensityMatrix: matrix is not square");
  }
  const std::size_t n = qubits_for_dim(m.rows());
  if (!all_finite(m)) {
    throw InvalidStateError("DensityMatrix: non-finite entry");
  }
  const double herm = hermiticity_error(m);
  if (herm > kHermitianTolerance) {
    throw InvalidStateError("DensityMatrix: not Hermitian (deviation " + std::to_string(herm) + ")");
  }
  const double tr = m.trace().real();
  if (std::abs(tr - 1.0) > kTraceTolerance) {
    throw InvalidStateError("DensityMatrix: trace " + std::to_string(tr) + " is not 1");
  }
  ComplexMatrix h = 0.5 * (m + m.adjoint());
  const HermitianEigen eig = eig_hermitian(h, 1e-8);
  const double min_eig = eig.values.minCoeff();
  if (min_eig < -kPsdSlack) {
    throw InvalidStateError("DensityMatrix: eigenvalue " + std::to_string(min_eig) +
                            " is below the PSD slack");
  }
  if (min_eig < 0.0) {
    RealVector clipped = eig.values.cwiseMax(0.0);
    clipped /= clipped.sum();
    h = eig.vectors * clipped.asDiagonal() * eig.vectors.adjoint();
  }
  return DensityMatrix(n, std::move(h));
}

DensityMatrix DensityMatrix::from_pure(const PureState &psi) {
  const ComplexVector &a = psi.amplitudes();
  return DensityMatrix(psi.num_qubits(), a * a.adjoint());
}

DensityMatrix DensityMatrix::basis(std::size_t num_qubits, std::size_t index) {
  return from_pure(PureState::basis(num_qubits, index));
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t num_qubits) {
  const auto dim = static_cast<Eigen::Index>(dimension_of(num_qubits));
  ComplexMatrix m = ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim);
  return DensityMatrix(num_qubits, std::move(m));
}

DensityMatrix DensityMatrix::from_trusted(std::size_t num_qubits, ComplexMatrix m) {
  if (static_cast<std::size_t>(m.rows()) != dimension_of(num_qubits) || m.rows() != m.cols()) {
    throw DimensionError("DensityMatrix::from_trusted: shape does not match qubit count");
  }
  return DensityMatrix(num_qubits, std::move(m));
}

double DensityMatrix::purity() const { return trace_product_real(matrix_, matrix_); }

Bipartition Bipartition::make(std::vector<std::size_t> part_a, std::vector<std::size_t> part_b,
                              std::size_t num_qubits) {
  if (part_a.empty() || part_b.empty()) {
    throw InvalidArgument("Bipartition: both parts must be non-empty");
  }
  std::sort(part_a.begin(), part_a.end());
  std::sort(part_b.begin(), part_b.end());
  std::vector<int> seen(num_qubits, 0);
  for (const auto *part : {&part_a, &part_b}) {
    for (std::size_t q : *part) {
      if (q >= num_qubits) {
        throw InvalidArgument("Bipartition: qubit " + std::to_string(q) + " out of range");
      }
      if (seen[q]++ != 0) {
        throw InvalidArgument("Bipartition: qubit " + std::to_string(q) + " listed twice");
      }
    }
  }
  if (part_a.size() + part_b.size() != num_qubits) {
    throw InvalidArgument("Bipartition: parts do not cover every qubit");
  }
  return Bipartition(std::move(part_a), std::move(part_b));
}

Bipartition Bipartition::contiguous(std::size_t split, std::size_t num_qubits) {
  std::vector<std::size_t> a;
  std::vector<std::size_t> b;
  for (std::size_t q = 0; q < num_qubits; ++q) {
    (q < split ? a : b).push_back(q);
  }
  return make(std::move(a), std::move(b), num_qubits);
}

bool Bipartition::in_a(std::size_t qubit) const {
  return std::binary_search(part_a_.begin(), part_a_.end(), qubit);
}

bool Bipartition::in_b(std::size_t qubit) const {
  return std::binary_search(part_b_.begin(), part_b_.end(), qubit);
}

DensityMatrix tensor_product(const DensityMatrix &a, const DensityMatrix &b, std::size_t max_qubits) {
  const std::size_t n = a.num_qubits() + b.num_qubits();
  if (n > max_qubits) {
    throw DimensionError("tensor_product: " + std::to_string(n) + " qubits exceed the cap of " +
                         std::to_string(max_qubits));
  }
  return DensityMatrix::from_trusted(n, kron(a.matrix(), b.matrix()));
}

DensityMatrix partial_trace(const DensityMatrix &rho, const std::vector<std::size_t> &traced_qubits) {
  const std::size_t n = rho.num_qubits();
  std::uint64_t traced_mask = 0;
  for (std::size_t q : traced_qubits) {
    if (q >= n) {
      throw InvalidArgument("partial_trace: qubit " + std::to_string(q) + " out of range");
    }
    if ((traced_mask & qubit_mask(q, n)) != 0) {
      throw InvalidArgument("partial_trace: qubit " + std::to_string(q) + " listed twice");
    }
    traced_mask |= qubit_mask(q, n);
  }
  if (traced_qubits.size() >= n) {
    throw InvalidArgument("partial_trace: cannot trace out every qubit");
  }
  if (traced_qubits.empty()) {
    return rho;
  }
  std::vector<std::uint64_t> kept_masks;
  for (std::size_t q = 0; q < n; ++q) {
    if ((traced_mask & qubit_mask(q, n)) == 0) {
      kept_masks.push_back(qubit_mask(q, n));
    }
  }
  const std::size_t kept = kept_masks.size();
  auto compress = [&](std::uint64_t index) {
    std::uint64_t out = 0;
    for (std::size_t k = 0; k < kept; ++k) {
      if ((index & kept_masks[k]) != 0) {
        out |= std::uint64_t{1} << (kept - 1 - k);
      }
    }
    return static_cast<Eigen::Index>(out);
  };
  const auto dim = static_cast<Eigen::Index>(rho.dim());
  std::vector<Eigen::Index> reduced(static_cast<std::size_t>(dim));
  for (Eigen::Index i = 0; i < dim; ++i) {
    reduced[static_cast<std::size_t>(i)] = compress(static_cast<std::uint64_t>(i));
  }
  const auto out_dim = static_cast<Eigen::Index>(dimension_of(kept));
  ComplexMatrix out = ComplexMatrix::Zero(out_dim, out_dim);
  const ComplexMatrix &m = rho.matrix();
  for (Eigen::Index j = 0; j < dim; ++j) {
    const auto tj = static_cast<std::uint64_t>(j) & traced_mask;
    for (Eigen::Index i = 0; i < dim; ++i) {
      if ((static_cast<std::uint64_t>(i) & traced_mask) == tj) {
        out(reduced[static_cast<std::size_t>(i)], reduced[static_cast<std::size_t>(j)]) += m(i, j);
      }
    }
  }
  return DensityMatrix::from_trusted(kept, std::move(out));
}

ComplexMatrix partial_transpose(const ComplexMatrix &m, const Bipartition &cut) {
  if (m.rows() != m.cols()) {
    throw DimensionError("partial_transpose: matrix is not square");
  }
  const std::size_t n = qubits_for_dim(m.rows());
  if (cut.num_qubits() != n) {
    throw InvalidArgument("partial_transpose: bipartition covers " + std::to_string(cut.num_qubits()) +
                          " qubits, state has " + std::to_string(n));
  }
  std::uint64_t mask_b = 0;
  for (std::size_t q : cut.part_b()) {
    mask_b |= qubit_mask(q, n);
  }
  const Eigen::Index dim = m.rows();
  ComplexMatrix out(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    for (Eigen::Index i = 0; i < dim; ++i) {
      const auto ui = static_cast<std::uint64_t>(i);
      const auto uj = static_cast<std::uint64_t>(j);
      const auto ti = static_cast<Eigen::Index>((ui & ~mask_b) | (uj & mask_b));
      const auto tj = static_cast<Eigen::Index>((uj & ~mask_b) | (ui & mask_b));
      out(ti, tj) = m(i, j);
    }
  }
  return out;
}

ComplexMatrix partial_transpose(const DensityMatrix &rho, const Bipartition &cut) {
  return partial_transpose(rho.matrix(), cut);
}

double fidelity(const DensityMatrix &rho, const DensityMatrix &sigma) {
  if (rho.dim() != sigma.dim()) {
    throw DimensionError("fidelity: dimension mismatch");
  }
  // F = ||sqrt(rho) sqrt(sigma)||_1^2; the nuclear norm form is symmetric in
  // its arguments by construction.
  const ComplexMatrix product = psd_root(rho.matrix()) * psd_root(sigma.matrix());
  Eigen::JacobiSVD<ComplexMatrix> svd(product);
  const double root_fidelity = svd.singularValues().sum();
  return std::clamp(root_fidelity * root_fidelity, 0.0, 1.0);
}

double trace_distance(const DensityMatrix &rho, const DensityMatrix &sigma) {
  if (rho.dim() != sigma.dim()) {
    throw DimensionError("trace_distance: dimension mismatch");
  }
  const HermitianEigen eig = eig_hermitian(rho.matrix() - sigma.matrix(), 1e-8);
  return 0.5 * eig.values.cwiseAbs().sum();
}

} // namespace qadv
