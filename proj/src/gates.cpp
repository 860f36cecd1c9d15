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
#include "qadv/gates.hpp"

#include <array>
#include <cmath>
#include <set>

#include "qadv/errors.hpp"

namespace qadv {
namespace {

constexpr Complex kI{0.0, 1.0};

struct KindInfo {
  GateKind kind;
  std::string_view name;
  std::size_t arity;
  std::size_t angles;
};

constexpr std::array<KindInfo, 9> kKinds{{
    {GateKind::RX, "RX", 1, 1},
    {GateKind::RY, "RY", 1, 1},
    {GateKind::RZ, "RZ", 1, 1},
    {GateKind::U3, "U3", 1, 3},
    {GateKind::CZ, "CZ", 2, 0},
    {GateKind::CNOT, "CNOT", 2, 0},
    {GateKind::CU3, "CU3", 2, 3},
    {GateKind::H, "H", 1, 0},
    {GateKind::X, "X", 1, 0},
}};

const KindInfo &info(GateKind kind) {
  for (const auto &k : kKinds) {
    if (k.kind == kind) {
      return k;
    }
  }
  throw InvalidArgument("unknown gate kind");
}

} // namespace

std::string_view to_string(GateKind kind) { return info(kind).name; }

GateKind gate_kind_from_string(std::string_view name) {
  for (const auto &k : kKinds) {
    if (k.name == name) {
      return k.kind;
    }
  }
  throw InvalidArgument("unknown gate kind '" + std::string(name) + "'");
}

std::size_t gate_arity(GateKind kind) { return info(kind).arity; }
std::size_t gate_angle_count(GateKind kind) { return info(kind).angles; }

bool has_two_term_shift_rule(GateKind kind) {
  switch (kind) {
  case GateKind::RX:
  case GateKind::RY:
  case GateKind::RZ:
  case GateKind::U3:
    return true;
  default:
    return false;
  }
}

bool Gate::is_parameterized() const {
  for (const auto &a : angles) {
    if (a.is_named()) {
      return true;
    }
  }
  return false;
}

Gate make_gate(GateKind kind, std::vector<std::size_t> qubits, std::vector<AngleSlot> angles) {
  const KindInfo &k = info(kind);
  if (qubits.size() != k.arity) {
    throw InvalidArgument(std::string(k.name) + " acts on " + std::to_string(k.arity) +
                          " qubit(s), got " + std::to_string(qubits.size()));
  }
  if (angles.size() != k.angles) {
    throw InvalidArgument(std::string(k.name) + " takes " + std::to_string(k.angles) +
                          " angle(s), got " + std::to_string(angles.size()));
  }
  if (std::set<std::size_t>(qubits.begin(), qubits.end()).size() != qubits.size()) {
    throw InvalidArgument(std::string(k.name) + " repeats a qubit");
  }
  for (const auto &a : angles) {
    if (!a.is_named() && !std::isfinite(a.value)) {
      throw InvalidArgument(std::string(k.name) + " has a non-finite fixed angle");
    }
  }
  return Gate{kind, std::move(qubits), std::move(angles)};
}

namespace gates {

ComplexMatrix rx(double theta) {
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  ComplexMatrix m(2, 2);
  m << c, -kI * s, -kI * s, c;
  return m;
}

ComplexMatrix ry(double theta) {
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  ComplexMatrix m(2, 2);
  m << c, -s, s, c;
  return m;
}

ComplexMatrix rz(double theta) {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = std::exp(-kI * (theta / 2));
  m(1, 1) = std::exp(kI * (theta / 2));
  return m;
}

ComplexMatrix u3(double theta, double phi, double lambda) {
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  ComplexMatrix m(2, 2);
  m << c, -std::exp(kI * lambda) * s, std::exp(kI * phi) * s, std::exp(kI * (phi + lambda)) * c;
  return m;
}

ComplexMatrix hadamard() {
  const double r = 1.0 / std::sqrt(2.0);
  ComplexMatrix m(2, 2);
  m << r, r, r, -r;
  return m;
}

ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m << 0, -kI, kI, 0;
  return m;
}

ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

ComplexMatrix cz() {
  ComplexMatrix m = ComplexMatrix::Identity(4, 4);
  m(3, 3) = -1.0;
  return m;
}

ComplexMatrix cnot() { return controlled(pauli_x()); }

ComplexMatrix controlled(const ComplexMatrix &u) {
  ComplexMatrix m = ComplexMatrix::Identity(4, 4);
  m.block(2, 2, 2, 2) = u;
  return m;
}

} // namespace gates

ComplexMatrix gate_matrix(const Gate &g, std::span<const double> angles) {
  if (angles.size() != g.angles.size()) {
    throw InvalidArgument(std::string(to_string(g.kind)) + ": expected " +
                          std::to_string(g.angles.size()) + " angle(s)");
  }
  switch (g.kind) {
  case GateKind::RX:
    return gates::rx(angles[0]);
  case GateKind::RY:
    return gates::ry(angles[0]);
  case GateKind::RZ:
    return gates::rz(angles[0]);
  case GateKind::U3:
    return gates::u3(angles[0], angles[1], angles[2]);
  case GateKind::CZ:
    return gates::cz();
  case GateKind::CNOT:
    return gates::cnot();
  case GateKind::CU3:
    return gates::controlled(gates::u3(angles[0], angles[1], angles[2]));
  case GateKind::H:
    return gates::hadamard();
  case GateKind::X:
    return gates::pauli_x();
  }
  throw InvalidArgument("unknown gate kind");
}

ComplexMatrix gate_matrix(const Gate &g, const ParameterBinding &binding) {
  std::vector<double> values;
  values.reserve(g.angles.size());
  for (const auto &slot : g.angles) {
    if (!slot.is_named()) {
      values.push_back(slot.value);
      continue;
    }
    const auto it = binding.find(slot.name);
    if (it == binding.end()) {
      throw UnboundParameter("parameter '" + slot.name + "' of " + std::string(to_string(g.kind)) +
                             " is not bound");
    }
    values.push_back(it->second);
  }
  return gate_matrix(g, values);
}

} // namespace qadv
