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
#include "qadv/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qadv/errors.hpp"
#include "qadv/kernels.hpp"

namespace qadv {

namespace {
constexpr double kHalfPi = std::numbers::pi / 2;
} // namespace

ParamVector::ParamVector(std::vector<double> values) : values_(std::move(values)) {
  for (double v : values_) {
    if (!std::isfinite(v)) {
      throw InvalidArgument("ParamVector: non-finite value");
    }
  }
}

ParamCircuit::ParamCircuit(std::size_t num_qubits) : num_qubits_(num_qubits) {
  if (num_qubits == 0) {
    throw InvalidArgument("ParamCircuit: needs at least one qubit");
  }
}

ParamCircuit &ParamCircuit::declare_parameter(const std::string &name) {
  if (name.empty()) {
    throw InvalidArgument("ParamCircuit: empty parameter name");
  }
  if (!parameter_index(name)) {
    names_.push_back(name);
  }
  return *this;
}

ParamCircuit &ParamCircuit::append(Gate g) {
  g = make_gate(g.kind, std::move(g.qubits), std::move(g.angles));
  for (std::size_t q : g.qubits) {
    if (q >= num_qubits_) {
      throw InvalidArgument(std::string(to_string(g.kind)) + " on qubit " + std::to_string(q) +
                            " exceeds the " + std::to_string(num_qubits_) + "-qubit register");
    }
  }
  for (const auto &slot : g.angles) {
    if (slot.is_named()) {
      declare_parameter(slot.name);
    }
  }
  gates_.push_back(std::move(g));
  return *this;
}

ParamCircuit &ParamCircuit::append(const ParamCircuit &other) {
  if (other.num_qubits_ > num_qubits_) {
    throw DimensionError("ParamCircuit::append: circuit is wider than the register");
  }
  for (const auto &name : other.names_) {
    declare_parameter(name);
  }
  for (const auto &g : other.gates_) {
    append(g);
  }
  return *this;
}

ParamCircuit &ParamCircuit::rx(std::size_t q, AngleSlot a) {
  return append(make_gate(GateKind::RX, {q}, {std::move(a)}));
}
ParamCircuit &ParamCircuit::ry(std::size_t q, AngleSlot a) {
  return append(make_gate(GateKind::RY, {q}, {std::move(a)}));
}
ParamCircuit &ParamCircuit::rz(std::size_t q, AngleSlot a) {
  return append(make_gate(GateKind::RZ, {q}, {std::move(a)}));
}
ParamCircuit &ParamCircuit::u3(std::size_t q, AngleSlot theta, AngleSlot phi, AngleSlot lambda) {
  return append(make_gate(GateKind::U3, {q}, {std::move(theta), std::move(phi), std::move(lambda)}));
}
ParamCircuit &ParamCircuit::h(std::size_t q) { return append(make_gate(GateKind::H, {q})); }
ParamCircuit &ParamCircuit::x(std::size_t q) { return append(make_gate(GateKind::X, {q})); }
ParamCircuit &ParamCircuit::cz(std::size_t a, std::size_t b) {
  return append(make_gate(GateKind::CZ, {a, b}));
}
ParamCircuit &ParamCircuit::cnot(std::size_t control, std::size_t target) {
  return append(make_gate(GateKind::CNOT, {control, target}));
}
ParamCircuit &ParamCircuit::cu3(std::size_t control, std::size_t target, AngleSlot theta,
                                AngleSlot phi, AngleSlot lambda) {
  return append(make_gate(GateKind::CU3, {control, target},
                          {std::move(theta), std::move(phi), std::move(lambda)}));
}

std::optional<std::size_t> ParamCircuit::parameter_index(std::string_view name) const {
  const auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) {
    return std::nullopt;
  }
  return static_cast<std::size_t>(it - names_.begin());
}

ParameterBinding ParamCircuit::bind(const ParamVector &params) const {
  if (params.size() != names_.size()) {
    throw InvalidArgument("ParamCircuit::bind: expected " + std::to_string(names_.size()) +
                          " parameters, got " + std::to_string(params.size()));
  }
  ParameterBinding binding;
  for (std::size_t i = 0; i < names_.size(); ++i) {
    binding.emplace(names_[i], params[i]);
  }
  return binding;
}

ComplexMatrix ParamCircuit::unitary(const ParamVector &params) const {
  const ParameterBinding binding = bind(params);
  const auto dim = static_cast<Eigen::Index>(dimension_of(num_qubits_));
  ComplexMatrix u = ComplexMatrix::Identity(dim, dim);
  for (const auto &g : gates_) {
    kernels::apply_left(u, gate_matrix(g, binding), g.qubits, num_qubits_);
  }
  return u;
}

double AffineAngle::evaluate(std::span<const double> params) const {
  double v = offset;
  for (const auto &[index, coeff] : terms) {
    v += coeff * params[index];
  }
  return v;
}

namespace {

AffineAngle slot_angle(const AngleSlot &slot, const ParamCircuit &c) {
  if (!slot.is_named()) {
    return AffineAngle{slot.value, {}};
  }
  return AffineAngle{0.0, {{*c.parameter_index(slot.name), 1.0}}};
}

// sum_k weight_k * angle_k, merging repeated parameter indices.
AffineAngle combine(std::initializer_list<std::pair<double, const AffineAngle *>> parts) {
  AffineAngle out;
  for (const auto &[w, a] : parts) {
    out.offset += w * a->offset;
    for (const auto &[index, coeff] : a->terms) {
      auto it = std::find_if(out.terms.begin(), out.terms.end(),
                             [index = index](const auto &t) { return t.first == index; });
      if (it == out.terms.end()) {
        out.terms.emplace_back(index, w * coeff);
      } else {
        it->second += w * coeff;
      }
    }
  }
  std::erase_if(out.terms, [](const auto &t) { return t.second == 0.0; });
  return out;
}

} // namespace

Program Program::compile(const ParamCircuit &circuit) {
  Program p;
  p.num_qubits_ = circuit.num_qubits();
  p.num_params_ = circuit.num_params();

  auto rotation = [&p](char axis, std::size_t q, AffineAngle angle) {
    // Identically-zero rotations carry no information.
    if (angle.is_constant() && angle.offset == 0.0) {
      return;
    }
    Op op;
    op.kind = Op::Kind::Rotation;
    op.axis = axis;
    op.qubits = {q};
    op.angle = std::move(angle);
    p.ops_.push_back(std::move(op));
  };
  auto fixed = [&p](std::vector<std::size_t> qubits, ComplexMatrix m) {
    Op op;
    op.kind = Op::Kind::Fixed;
    op.qubits = std::move(qubits);
    op.matrix = std::move(m);
    p.ops_.push_back(std::move(op));
  };
  auto phase = [&p](AffineAngle angle) {
    Op op;
    op.kind = Op::Kind::GlobalPhase;
    op.angle = std::move(angle);
    p.ops_.push_back(std::move(op));
  };

  for (const auto &g : circuit.gates()) {
    std::vector<AffineAngle> a;
    for (const auto &slot : g.angles) {
      a.push_back(slot_angle(slot, circuit));
    }
    switch (g.kind) {
    case GateKind::RX:
      rotation('X', g.qubits[0], a[0]);
      break;
    case GateKind::RY:
      rotation('Y', g.qubits[0], a[0]);
      break;
    case GateKind::RZ:
      rotation('Z', g.qubits[0], a[0]);
      break;
    case GateKind::U3: {
      // U3(t, p, l) = e^{i(p+l)/2} RZ(p) RY(t) RZ(l)
      const AffineAngle &theta = a[0], &phi = a[1], &lambda = a[2];
      rotation('Z', g.qubits[0], lambda);
      rotation('Y', g.qubits[0], theta);
      rotation('Z', g.qubits[0], phi);
      phase(combine({{0.5, &phi}, {0.5, &lambda}}));
      break;
    }
    case GateKind::CU3: {
      // u1((l+p)/2)_c u1((l-p)/2)_t CX u3(-t/2, 0, -(p+l)/2)_t CX u3(t/2, p, 0)_t
      // with u1(x) = e^{ix/2} RZ(x).
      const AffineAngle &theta = a[0], &phi = a[1], &lambda = a[2];
      const std::size_t c = g.qubits[0], t = g.qubits[1];
      const AffineAngle sum_half = combine({{0.5, &lambda}, {0.5, &phi}});
      const AffineAngle diff_half = combine({{0.5, &lambda}, {-0.5, &phi}});
      rotation('Z', c, sum_half);
      rotation('Z', t, diff_half);
      fixed({c, t}, gates::cnot());
      rotation('Z', t, combine({{-1.0, &sum_half}}));
      rotation('Y', t, combine({{-0.5, &theta}}));
      fixed({c, t}, gates::cnot());
      rotation('Y', t, combine({{0.5, &theta}}));
      rotation('Z', t, phi);
      // Phases: u1 pair gives (l+p)/4 + (l-p)/4, first u3 gives -(p+l)/4,
      // second u3 gives p/2.
      phase(combine({{0.25, &lambda}, {0.25, &phi}}));
      break;
    }
    case GateKind::CZ:
    case GateKind::CNOT:
    case GateKind::H:
    case GateKind::X:
      fixed(g.qubits, gate_matrix(g, std::span<const double>{}));
      break;
    }
  }
  for (std::size_t i = 0; i < p.ops_.size(); ++i) {
    const Op &op = p.ops_[i];
    if (op.kind == Op::Kind::Rotation && !op.angle.is_constant()) {
      p.shift_terms_.push_back(ShiftTerm{i, op.angle.terms});
    }
  }
  return p;
}

ComplexMatrix Program::op_matrix(const Op &op, std::span<const double> params, double delta) const {
  const double angle = op.angle.evaluate(params) + delta;
  switch (op.axis) {
  case 'X':
    return gates::rx(angle);
  case 'Y':
    return gates::ry(angle);
  default:
    return gates::rz(angle);
  }
}

void Program::apply(ComplexVector &state, std::span<const double> params,
                    const AngleShift *shift) const {
  if (params.size() != num_params_) {
    throw InvalidArgument("Program: expected " + std::to_string(num_params_) + " parameters");
  }
  if (static_cast<std::size_t>(state.size()) != dimension_of(num_qubits_)) {
    throw DimensionError("Program: state length does not match the register");
  }
  const std::size_t shifted_op = shift ? shift_terms_.at(shift->term).op_index : ops_.size();
  for (std::size_t i = 0; i < ops_.size(); ++i) {
    const Op &op = ops_[i];
    switch (op.kind) {
    case Op::Kind::Rotation:
      kernels::apply_left(state, op_matrix(op, params, i == shifted_op ? shift->delta : 0.0),
                          op.qubits, num_qubits_);
      break;
    case Op::Kind::Fixed:
      kernels::apply_left(state, op.matrix, op.qubits, num_qubits_);
      break;
    case Op::Kind::GlobalPhase:
      state *= std::exp(Complex{0.0, op.angle.evaluate(params)});
      break;
    }
  }
}

void Program::conjugate(ComplexMatrix &m, std::span<const double> params,
                        const AngleShift *shift) const {
  if (params.size() != num_params_) {
    throw InvalidArgument("Program: expected " + std::to_string(num_params_) + " parameters");
  }
  const std::size_t shifted_op = shift ? shift_terms_.at(shift->term).op_index : ops_.size();
  for (std::size_t i = 0; i < ops_.size(); ++i) {
    const Op &op = ops_[i];
    switch (op.kind) {
    case Op::Kind::Rotation:
      kernels::conjugate(m, op_matrix(op, params, i == shifted_op ? shift->delta : 0.0), op.qubits,
                         num_qubits_);
      break;
    case Op::Kind::Fixed:
      kernels::conjugate(m, op.matrix, op.qubits, num_qubits_);
      break;
    case Op::Kind::GlobalPhase:
      break;
    }
  }
}

std::vector<Program::ShiftPair> Program::shift_pairs(std::span<const double> params,
                                                     const ComplexMatrix &p,
                                                     const ComplexMatrix &x) const {
  if (params.size() != num_params_) {
    throw InvalidArgument("Program: expected " + std::to_string(num_params_) + " parameters");
  }
  const auto dim = static_cast<Eigen::Index>(dimension_of(num_qubits_));
  if (p.rows() != dim || p.cols() != dim || x.rows() != dim || x.cols() != dim) {
    throw DimensionError("Program::shift_pairs: operator size does not match the register");
  }
  auto op_unitary = [&](const Op &op, double delta) {
    return op.kind == Op::Kind::Rotation ? op_matrix(op, params, delta) : op.matrix;
  };

  // Observable pulled back to just after each shifted rotation.
  std::vector<ComplexMatrix> pulled(shift_terms_.size());
  ComplexMatrix b = x;
  std::size_t term = shift_terms_.size();
  for (std::size_t i = ops_.size(); i-- > 0;) {
    const Op &op = ops_[i];
    if (op.kind == Op::Kind::GlobalPhase) {
      continue;
    }
    if (term > 0 && shift_terms_[term - 1].op_index == i) {
      pulled[--term] = b;
    }
    kernels::conjugate(b, op_unitary(op, 0.0).adjoint(), op.qubits, num_qubits_);
  }

  std::vector<ShiftPair> out(shift_terms_.size());
  ComplexMatrix f = p;
  term = 0;
  for (std::size_t i = 0; i < ops_.size(); ++i) {
    const Op &op = ops_[i];
    if (op.kind == Op::Kind::GlobalPhase) {
      continue;
    }
    if (term < shift_terms_.size() && shift_terms_[term].op_index == i) {
      for (const double delta : {kHalfPi, -kHalfPi}) {
        ComplexMatrix shifted = f;
        kernels::conjugate(shifted, op_matrix(op, params, delta), op.qubits, num_qubits_);
        const double v = trace_product_real(pulled[term], shifted);
        (delta > 0 ? out[term].plus : out[term].minus) = v;
      }
      ++term;
    }
    kernels::conjugate(f, op_unitary(op, 0.0), op.qubits, num_qubits_);
  }
  return out;
}

ComplexMatrix Program::unitary(std::span<const double> params) const {
  const auto dim = static_cast<Eigen::Index>(dimension_of(num_qubits_));
  ComplexMatrix u = ComplexMatrix::Identity(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    ComplexVector col = u.col(j);
    apply(col, params);
    u.col(j) = col;
  }
  return u;
}

PureState apply_circuit_pure(const ParamCircuit &c, const ParamVector &params,
                             const PureState &input) {
  if (input.num_qubits() != c.num_qubits()) {
    throw DimensionError("apply_circuit_pure: state has " + std::to_string(input.num_qubits()) +
                         " qubits, circuit has " + std::to_string(c.num_qubits()));
  }
  c.bind(params);
  ComplexVector a = input.amplitudes();
  Program::compile(c).apply(a, params.span());
  return PureState::from_trusted(c.num_qubits(), std::move(a));
}

DensityMatrix apply_circuit_density(const ParamCircuit &c, const ParamVector &params,
                                    const DensityMatrix &input) {
  if (input.num_qubits() != c.num_qubits()) {
    throw DimensionError("apply_circuit_density: state has " + std::to_string(input.num_qubits()) +
                         " qubits, circuit has " + std::to_string(c.num_qubits()));
  }
  c.bind(params);
  ComplexMatrix m = input.matrix();
  Program::compile(c).conjugate(m, params.span());
  return DensityMatrix::from_trusted(c.num_qubits(), std::move(m));
}

} // namespace qadv
