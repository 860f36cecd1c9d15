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
#include "qadv/benchmarks.hpp"

#include <cmath>

#include "qadv/errors.hpp"

namespace qadv {

PureState ghz_state(std::size_t num_qubits) {
  if (num_qubits == 0) {
    throw InvalidArgument("ghz_state: needs at least one qubit");
  }
  const auto dim = static_cast<Eigen::Index>(dimension_of(num_qubits));
  ComplexVector a = ComplexVector::Zero(dim);
  a(0) = a(dim - 1) = 1.0 / std::sqrt(2.0);
  return PureState::from_amplitudes(std::move(a));
}

PureState psi_s() {
  ComplexVector a = ComplexVector::Zero(4);
  a(0b00) = a(0b10) = 1.0 / std::sqrt(2.0);
  return PureState::from_amplitudes(std::move(a));
}

PureState psi_e() {
  ComplexVector a = ComplexVector::Zero(4);
  a(0b01) = a(0b10) = 1.0 / std::sqrt(2.0);
  return PureState::from_amplitudes(std::move(a));
}

DensityMatrix build_rho_s(NoiseParam p) {
  ComplexMatrix m = DensityMatrix::from_pure(psi_s()).matrix();
  // (|H><V| + |V><H|) (x) |H><H| touches only (|HH>, |VH>) = indices (0, 2).
  m(0b00, 0b10) -= 1.0 - p.value();
  m(0b10, 0b00) -= 1.0 - p.value();
  return DensityMatrix::from_matrix(m);
}

DensityMatrix build_rho_e(NoiseParam p) {
  ComplexMatrix m = p.value() * DensityMatrix::from_pure(psi_e()).matrix();
  m(0b00, 0b00) += (1.0 - p.value()) / 2;
  m(0b11, 0b11) += (1.0 - p.value()) / 2;
  return DensityMatrix::from_matrix(m);
}

PureBenchmarks build_pure_benchmarks() {
  const DensityMatrix g2 = DensityMatrix::from_pure(ghz_state(2));
  const DensityMatrix g3 = DensityMatrix::from_pure(ghz_state(3));
  return {tensor_product(g2, g3), DensityMatrix::from_pure(ghz_state(5))};
}

} // namespace qadv
