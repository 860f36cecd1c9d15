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
#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qadv/linalg.hpp"

namespace qadv {

/// Gate set. Rotations follow R_P(t) = exp(-i t P / 2). U3(t, p, l) is
/// [[cos t/2, -e^{il} sin t/2], [e^{ip} sin t/2, e^{i(p+l)} cos t/2]] and
/// CU3 is its controlled version (control = first qubit). CNOT lists its
/// control first as well.
enum class GateKind { RX, RY, RZ, U3, CZ, CNOT, CU3, H, X };

std::string_view to_string(GateKind kind);
GateKind gate_kind_from_string(std::string_view name);
std::size_t gate_arity(GateKind kind);
std::size_t gate_angle_count(GateKind kind);

/// True when every angle of the gate enters through a single Pauli rotation
/// so that [f(t + pi/2) - f(t - pi/2)] / 2 is the exact derivative. Controlled
/// rotations (CU3) do not qualify.
bool has_two_term_shift_rule(GateKind kind);

/// An angle slot is either bound to a named circuit parameter or fixed.
struct AngleSlot {
  std::string name;
  double value = 0.0;

  bool is_named() const { return !name.empty(); }
  static AngleSlot param(std::string n) { return {std::move(n), 0.0}; }
  static AngleSlot fixed(double v) { return {std::string{}, v}; }
};

struct Gate {
  GateKind kind;
  std::vector<std::size_t> qubits;
  std::vector<AngleSlot> angles;

  bool is_parameterized() const;
  bool is_multi_qubit() const { return qubits.size() > 1; }
};

/// Checks arity, angle count and distinct qubits.
Gate make_gate(GateKind kind, std::vector<std::size_t> qubits, std::vector<AngleSlot> angles = {});

using ParameterBinding = std::map<std::string, double, std::less<>>;

/// Unitary of `g` (2x2 or 4x4) for explicit angle values.
ComplexMatrix gate_matrix(const Gate &g, std::span<const double> angles);

/// Unitary of `g` with named slots looked up in `binding`. Throws
/// UnboundParameter for a missing name.
ComplexMatrix gate_matrix(const Gate &g, const ParameterBinding &binding);

namespace gates {
ComplexMatrix rx(double theta);
ComplexMatrix ry(double theta);
ComplexMatrix rz(double theta);
ComplexMatrix u3(double theta, double phi, double lambda);
ComplexMatrix hadamard();
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();
ComplexMatrix cz();
ComplexMatrix cnot();
ComplexMatrix controlled(const ComplexMatrix &u);
} // namespace gates

} // namespace qadv
