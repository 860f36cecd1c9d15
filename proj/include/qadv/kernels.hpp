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

// In-place application of small operators to state vectors and operator
// matrices. `qubits` lists the target qubits, the first one being the most
// significant bit of the operator's local index.

#include <cstddef>
#include <span>

#include "qadv/linalg.hpp"

namespace qadv::kernels {

/// state <- (op on qubits) * state
void apply_left(ComplexVector &state, const ComplexMatrix &op, std::span<const std::size_t> qubits,
                std::size_t num_qubits);

/// m <- (op on qubits) * m
void apply_left(ComplexMatrix &m, const ComplexMatrix &op, std::span<const std::size_t> qubits,
                std::size_t num_qubits);

/// m <- m * (op on qubits)^dagger
void apply_right_adjoint(ComplexMatrix &m, const ComplexMatrix &op,
                         std::span<const std::size_t> qubits, std::size_t num_qubits);

/// m <- G m G^dagger with G = op embedded on `qubits`.
void conjugate(ComplexMatrix &m, const ComplexMatrix &op, std::span<const std::size_t> qubits,
               std::size_t num_qubits);

/// Full 2^n x 2^n matrix of `op` acting on `qubits` (identity elsewhere).
ComplexMatrix embed(const ComplexMatrix &op, std::span<const std::size_t> qubits,
                    std::size_t num_qubits);

} // namespace qadv::kernels
