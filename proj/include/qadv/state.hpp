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

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qadv/linalg.hpp"

namespace qadv {

/// Qubit 0 is the most significant bit of a computational-basis index, so
/// `tensor_product(a, b)` puts `a` on the low-numbered qubits.
inline constexpr std::size_t kDefaultMaxQubits = 12;

/// Tolerances shared by the state constructors.
inline constexpr double kNormTolerance = 1e-10;
inline constexpr double kHermitianTolerance = 1e-10;
inline constexpr double kTraceTolerance = 1e-10;
inline constexpr double kPsdSlack = 1e-9;

inline std::size_t dimension_of(std::size_t num_qubits) {
  return std::size_t{1} << num_qubits;
}

/// Bit mask of `qubit` inside an index over `num_qubits` qubits.
inline std::uint64_t qubit_mask(std::size_t qubit, std::size_t num_qubits) {
  return std::uint64_t{1} << (num_qubits - 1 - qubit);
}

class PureState {
public:
  /// Validates length 2^n and unit norm.
  static PureState from_amplitudes(ComplexVector amplitudes);
  /// |index> on n qubits.
  static PureState basis(std::size_t num_qubits, std::size_t index);
  static PureState zero(std::size_t num_qubits) { return basis(num_qubits, 0); }
  /// Skips validation; for kernels whose output is normalized by
  /// construction.
  static PureState from_trusted(std::size_t num_qubits, ComplexVector amplitudes);

  std::size_t num_qubits() const { return num_qubits_; }
  const ComplexVector &amplitudes() const { return amplitudes_; }

private:
  PureState(std::size_t n, ComplexVector a) : num_qubits_(n), amplitudes_(std::move(a)) {}
  std::size_t num_qubits_;
  ComplexVector amplitudes_;
};

/// Hermitian, unit-trace, PSD operator on 2^n dimensions. Immutable.
class DensityMatrix {
public:
  /// Full validation. Eigenvalues in [-kPsdSlack, 0) are clipped to zero and
  /// the trace renormalized; anything more negative throws
  /// InvalidStateError.
  static DensityMatrix from_matrix(const ComplexMatrix &m);
  static DensityMatrix from_pure(const PureState &psi);
  static DensityMatrix basis(std::size_t num_qubits, std::size_t index);
  static DensityMatrix maximally_mixed(std::size_t num_qubits);
  /// Skips the eigenvalue check. Only for results of validity-preserving
  /// maps (unitary conjugation, CPTP channels, partial traces).
  static DensityMatrix from_trusted(std::size_t num_qubits, ComplexMatrix m);

  std::size_t num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }
  const ComplexMatrix &matrix() const { return matrix_; }
  Complex operator()(std::size_t i, std::size_t j) const {
    return matrix_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  double purity() const;

private:
  DensityMatrix(std::size_t n, ComplexMatrix m) : num_qubits_(n), matrix_(std::move(m)) {}
  std::size_t num_qubits_;
  ComplexMatrix matrix_;
};

/// Split of the system qubits into two non-empty, disjoint, covering parts.
class Bipartition {
public:
  /// Sorts both parts and checks they cover 0..num_qubits-1 exactly once.
  static Bipartition make(std::vector<std::size_t> part_a, std::vector<std::size_t> part_b,
                          std::size_t num_qubits);
  /// Qubits [0, split) versus [split, num_qubits).
  static Bipartition contiguous(std::size_t split, std::size_t num_qubits);

  const std::vector<std::size_t> &part_a() const { return part_a_; }
  const std::vector<std::size_t> &part_b() const { return part_b_; }
  std::size_t num_qubits() const { return part_a_.size() + part_b_.size(); }
  bool in_a(std::size_t qubit) const;
  bool in_b(std::size_t qubit) const;

private:
  Bipartition(std::vector<std::size_t> a, std::vector<std::size_t> b)
      : part_a_(std::move(a)), part_b_(std::move(b)) {}
  std::vector<std::size_t> part_a_;
  std::vector<std::size_t> part_b_;
};

DensityMatrix tensor_product(const DensityMatrix &a, const DensityMatrix &b,
                             std::size_t max_qubits = kDefaultMaxQubits);

/// Traces out `traced_qubits`; the remaining qubits keep their relative
/// order.
DensityMatrix partial_trace(const DensityMatrix &rho, const std::vector<std::size_t> &traced_qubits);

/// Transpose on the indices of part B. Hermitian with unit trace, but not
/// necessarily PSD, so the result is a plain matrix.
ComplexMatrix partial_transpose(const ComplexMatrix &m, const Bipartition &cut);
ComplexMatrix partial_transpose(const DensityMatrix &rho, const Bipartition &cut);

/// Uhlmann fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2, clamped to [0, 1].
double fidelity(const DensityMatrix &rho, const DensityMatrix &sigma);

/// 1/2 ||rho - sigma||_1.
double trace_distance(const DensityMatrix &rho, const DensityMatrix &sigma);

} // namespace qadv
