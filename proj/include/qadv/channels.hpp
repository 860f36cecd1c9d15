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
#include <vector>

#include "qadv/linalg.hpp"
#include "qadv/state.hpp"

namespace qadv {

/// Mixing parameter p in [0, 1].
class NoiseParam {
public:
  explicit NoiseParam(double p);
  double value() const { return p_; }

private:
  double p_;
};

/// Trace-preserving Kraus channel on a subset of qubits.
class KrausChannel {
public:
  /// Throws ChannelError unless sum_k K^dagger K = I within 1e-9.
  KrausChannel(std::vector<ComplexMatrix> kraus, std::vector<std::size_t> qubits);

  const std::vector<ComplexMatrix> &operators() const { return kraus_; }
  const std::vector<std::size_t> &qubits() const { return qubits_; }

  /// Same operators on different qubits.
  KrausChannel on(std::vector<std::size_t> qubits) const;

private:
  std::vector<ComplexMatrix> kraus_;
  std::vector<std::size_t> qubits_;
};

/// In-place sum_k K m K^dagger on the channel's qubits of an n-qubit matrix.
void apply_kraus_in_place(const KrausChannel &ch, ComplexMatrix &m, std::size_t num_qubits);

DensityMatrix apply_kraus(const KrausChannel &ch, const DensityMatrix &rho);

KrausChannel identity_channel(std::size_t qubit);

/// {sqrt(1 - 3p/4) I, sqrt(p/4) X, sqrt(p/4) Y, sqrt(p/4) Z}.
KrausChannel depolarizing_channel(NoiseParam p, std::size_t qubit);

/// Phase damping {sqrt(lambda) I, sqrt(1 - lambda) Z}: off-diagonals scale by
/// 2 lambda - 1.
KrausChannel phase_damping_channel(double lambda, std::size_t qubit);

/// Generator-side noise matched to the rho_S map: lambda = p, so an
/// off-diagonal coherence c becomes c (1 - 2(1 - p)), the same attenuation
/// that sends 1/2 to 1/2 - (1 - p) on psi_S.
KrausChannel dephasing_generator_channel(NoiseParam p, std::size_t target);

/// Two-qubit channel that maps |psi_E><psi_E| to
/// p |psi_E><psi_E| + (1 - p)(|00><00| + |11><11|)/2: with probability
/// 1 - p flip the second qubit and dephase both in the computational basis.
KrausChannel rho_e_channel(NoiseParam p, std::size_t first, std::size_t second);

} // namespace qadv
