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
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qadv/gates.hpp"
#include "qadv/linalg.hpp"
#include "qadv/state.hpp"

namespace qadv {

/// Angle values (radians) in the order of a circuit's parameter names.
class ParamVector {
public:
  ParamVector() = default;
  /// Throws InvalidArgument on a non-finite value.
  explicit ParamVector(std::vector<double> values);
  static ParamVector zeros(std::size_t n) { return ParamVector(std::vector<double>(n, 0.0)); }

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  const std::vector<double> &values() const { return values_; }
  std::span<const double> span() const { return values_; }

private:
  std::vector<double> values_;
};

/// Ordered gate list over a fixed register. Parameter names are registered in
/// order of first appearance unless declared up front.
class ParamCircuit {
public:
  explicit ParamCircuit(std::size_t num_qubits);

  /// Validates qubit indices and registers new parameter names.
  ParamCircuit &append(Gate g);
  ParamCircuit &append(const ParamCircuit &other);
  ParamCircuit &declare_parameter(const std::string &name);

  ParamCircuit &rx(std::size_t q, AngleSlot a);
  ParamCircuit &ry(std::size_t q, AngleSlot a);
  ParamCircuit &rz(std::size_t q, AngleSlot a);
  ParamCircuit &u3(std::size_t q, AngleSlot theta, AngleSlot phi, AngleSlot lambda);
  ParamCircuit &h(std::size_t q);
  ParamCircuit &x(std::size_t q);
  ParamCircuit &cz(std::size_t a, std::size_t b);
  ParamCircuit &cnot(std::size_t control, std::size_t target);
  ParamCircuit &cu3(std::size_t control, std::size_t target, AngleSlot theta, AngleSlot phi,
                    AngleSlot lambda);

  std::size_t num_qubits() const { return num_qubits_; }
  const std::vector<Gate> &gates() const { return gates_; }
  const std::vector<std::string> &parameter_names() const { return names_; }
  std::size_t num_params() const { return names_.size(); }
  std::optional<std::size_t> parameter_index(std::string_view name) const;

  /// Name -> value map; throws InvalidArgument if the vector length differs
  /// from num_params().
  ParameterBinding bind(const ParamVector &params) const;

  /// Dense 2^n x 2^n unitary, built as the ordered product of gate_matrix()
  /// embeddings.
  ComplexMatrix unitary(const ParamVector &params) const;

private:
  std::size_t num_qubits_;
  std::vector<Gate> gates_;
  std::vector<std::string> names_;
};

/// Angle as an affine function of the parameter vector.
struct AffineAngle {
  double offset = 0.0;
  std::vector<std::pair<std::size_t, double>> terms;

  double evaluate(std::span<const double> params) const;
  bool is_constant() const { return terms.empty(); }
};

/// One shiftable rotation inside a compiled program, with the chain-rule
/// coefficients linking its angle to the parameters.
struct ShiftTerm {
  std::size_t op_index = 0;
  std::vector<std::pair<std::size_t, double>> coefficients;
};

/// Rotation `term` evaluated at angle + delta.
struct AngleShift {
  std::size_t term = 0;
  double delta = 0.0;
};

/// A circuit lowered to Pauli rotations, fixed gates and global phases. U3
/// becomes RZ RY RZ; CU3 becomes the standard two-CNOT construction whose
/// angles are affine in (theta, phi, lambda). Every parameter dependence then
/// passes through a single-Pauli rotation, so the two-term shift rule applied
/// per rotation is exact.
class Program {
public:
  static Program compile(const ParamCircuit &circuit);

  std::size_t num_qubits() const { return num_qubits_; }
  std::size_t num_params() const { return num_params_; }
  const std::vector<ShiftTerm> &shift_terms() const { return shift_terms_; }

  /// state <- U state (global phase included).
  void apply(ComplexVector &state, std::span<const double> params,
             const AngleShift *shift = nullptr) const;
  /// m <- U m U^dagger
  void conjugate(ComplexMatrix &m, std::span<const double> params,
                 const AngleShift *shift = nullptr) const;
  ComplexMatrix unitary(std::span<const double> params) const;

  struct ShiftPair {
    double plus = 0.0;
    double minus = 0.0;
  };
  /// Re Tr(X U_s P U_s^dagger) at delta = +pi/2 and -pi/2 for every shift
  /// term s, for Hermitian P and X. One forward and one backward sweep, so
  /// the cost is linear in the number of terms.
  std::vector<ShiftPair> shift_pairs(std::span<const double> params, const ComplexMatrix &p,
                                     const ComplexMatrix &x) const;

  struct Op {
    enum class Kind { Rotation, Fixed, GlobalPhase };
    Kind kind = Kind::Fixed;
    char axis = 'Z';
    std::vector<std::size_t> qubits;
    AffineAngle angle;
    ComplexMatrix matrix;
  };
  const std::vector<Op> &ops() const { return ops_; }

private:
  ComplexMatrix op_matrix(const Op &op, std::span<const double> params, double delta) const;

  std::size_t num_qubits_ = 0;
  std::size_t num_params_ = 0;
  std::vector<Op> ops_;
  std::vector<ShiftTerm> shift_terms_;
};

PureState apply_circuit_pure(const ParamCircuit &c, const ParamVector &params,
                             const PureState &input);
DensityMatrix apply_circuit_density(const ParamCircuit &c, const ParamVector &params,
                                    const DensityMatrix &input);

} // namespace qadv
