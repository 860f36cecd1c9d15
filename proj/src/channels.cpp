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
#include "qadv/channels.hpp"

#include <cmath>
#include <string>

#include "qadv/errors.hpp"
#include "qadv/gates.hpp"
#include "qadv/kernels.hpp"

namespace qadv {

NoiseParam::NoiseParam(double p) : p_(p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw InvalidArgument("noise parameter " + std::to_string(p) + " is outside [0, 1]");
  }
}

KrausChannel::KrausChannel(std::vector<ComplexMatrix> kraus, std::vector<std::size_t> qubits)
    : kraus_(std::move(kraus)), qubits_(std::move(qubits)) {
  if (kraus_.empty()) {
    throw ChannelError("KrausChannel: no operators");
  }
  const auto dim = static_cast<Eigen::Index>(dimension_of(qubits_.size()));
  ComplexMatrix completeness = ComplexMatrix::Zero(dim, dim);
  for (const auto &k : kraus_) {
    if (k.rows() != dim || k.cols() != dim) {
      throw ChannelError("KrausChannel: operator shape does not match " +
                         std::to_string(qubits_.size()) + " qubit(s)");
    }
    completeness += k.adjoint() * k;
  }
  const double err = (completeness - ComplexMatrix::Identity(dim, dim)).cwiseAbs().maxCoeff();
  if (err > 1e-9) {
    throw ChannelError("KrausChannel: not trace preserving (deviation " + std::to_string(err) + ")");
  }
}

KrausChannel KrausChannel::on(std::vector<std::size_t> qubits) const {
  return KrausChannel(kraus_, std::move(qubits));
}

void apply_kraus_in_place(const KrausChannel &ch, ComplexMatrix &m, std::size_t num_qubits) {
  if (ch.operators().size() == 1) {
    kernels::conjugate(m, ch.operators()[0], ch.qubits(), num_qubits);
    return;
  }
  ComplexMatrix out = ComplexMatrix::Zero(m.rows(), m.cols());
  for (const auto &k : ch.operators()) {
    ComplexMatrix term = m;
    kernels::conjugate(term, k, ch.qubits(), num_qubits);
    out += term;
  }
  m = std::move(out);
}

DensityMatrix apply_kraus(const KrausChannel &ch, const DensityMatrix &rho) {
  ComplexMatrix m = rho.matrix();
  apply_kraus_in_place(ch, m, rho.num_qubits());
  return DensityMatrix::from_trusted(rho.num_qubits(), std::move(m));
}

KrausChannel identity_channel(std::size_t qubit) {
  return KrausChannel({ComplexMatrix::Identity(2, 2)}, {qubit});
}

KrausChannel depolarizing_channel(NoiseParam p, std::size_t qubit) {
  const double q = p.value();
  return KrausChannel({std::sqrt(1.0 - 0.75 * q) * ComplexMatrix::Identity(2, 2),
                       std::sqrt(q / 4) * gates::pauli_x(), std::sqrt(q / 4) * gates::pauli_y(),
                       std::sqrt(q / 4) * gates::pauli_z()},
                      {qubit});
}

KrausChannel phase_damping_channel(double lambda, std::size_t qubit) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw ChannelError("phase damping weight outside [0, 1]");
  }
  return KrausChannel({std::sqrt(lambda) * ComplexMatrix::Identity(2, 2),
                       std::sqrt(1.0 - lambda) * gates::pauli_z()},
                      {qubit});
}

KrausChannel dephasing_generator_channel(NoiseParam p, std::size_t target) {
  return phase_damping_channel(p.value(), target);
}

KrausChannel rho_e_channel(NoiseParam p, std::size_t first, std::size_t second) {
  std::vector<ComplexMatrix> kraus;
  kraus.push_back(std::sqrt(p.value()) * ComplexMatrix::Identity(4, 4));
  const ComplexMatrix flip_second = kron(ComplexMatrix::Identity(2, 2), gates::pauli_x());
  for (Eigen::Index k = 0; k < 4; ++k) {
    ComplexMatrix projector = ComplexMatrix::Zero(4, 4);
    projector(k, k) = 1.0;
    kraus.push_back(std::sqrt(1.0 - p.value()) * projector * flip_second);
  }
  return KrausChannel(std::move(kraus), {first, second});
}

} // namespace qadv
