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
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qadv/channels.hpp"
#include "qadv/circuit.hpp"
#include "qadv/state.hpp"

namespace qadv {

enum class Side { A, B };

/// Maps an exact expectation to the value actually used, e.g. a shot-noise
/// sample mean.
using Estimator = std::function<double(double)>;

/// Generator circuit on N system qubits (indices 0..N-1) followed by
/// ancillas (N..N'-1). Each ancilla is assigned to one side of the cut; the
/// ancillas are traced out after the optional channel.
struct GeneratorSpec {
  ParamCircuit circuit;
  Bipartition cut;
  std::map<std::size_t, Side> ancilla_sides;
  std::optional<KrausChannel> channel;

  std::size_t num_system_qubits() const { return cut.num_qubits(); }
  std::vector<std::size_t> traced_qubits() const;
  /// Side of any register qubit, system or ancilla.
  Side side_of(std::size_t qubit) const;
};

struct SeparabilityReport {
  std::vector<std::size_t> offending_gates;
  bool channel_spans_cut = false;

  bool ok() const { return offending_gates.empty() && !channel_spans_cut; }
  std::string describe() const;
};

/// Every multi-qubit gate (and the channel, if any) must stay on one side.
/// Throws InvalidArgument for a malformed spec: circuit smaller than the
/// system, ancillas without a side, or side entries for non-ancillas.
SeparabilityReport validate_separability(const GeneratorSpec &spec);

/// Tr_anc(E(U |0><0| U^dagger)). Throws SeparabilityViolation when the spec
/// fails validation.
DensityMatrix generate_state(const GeneratorSpec &spec, const ParamVector &params);

/// Convex mixture of 2^m branch generators. The weights are the outcome
/// probabilities of a selector circuit on m qubits, i.e. a fully dephased
/// register shared by both sides as classical randomness. Each branch is
/// separable, so the mixture is too.
struct MixtureGeneratorSpec {
  ParamCircuit selector;
  std::vector<GeneratorSpec> branches;
};

/// Validates every branch and the branch count.
SeparabilityReport validate_separability(const MixtureGeneratorSpec &spec);

/// Trainable generator with exact shift-rule gradients of Tr(M sigma).
class Generator {
public:
  virtual ~Generator() = default;

  virtual std::size_t num_qubits() const = 0;
  virtual const std::vector<std::string> &parameter_names() const = 0;
  std::size_t num_params() const { return parameter_names().size(); }

  virtual DensityMatrix state(std::span<const double> params) const = 0;
  /// Tr(M sigma(params)) for a Hermitian M on the system qubits.
  virtual double expectation(const ComplexMatrix &m, std::span<const double> params) const = 0;
  /// d Tr(M sigma) / d params, one two-term shift per lowered rotation.
  /// When `estimate` is given, every shifted expectation passes through it.
  virtual std::vector<double> expectation_gradient(const ComplexMatrix &m,
                                                   std::span<const double> params,
                                                   const Estimator *estimate = nullptr) const = 0;
};

class CircuitGenerator final : public Generator {
public:
  /// Throws SeparabilityViolation when validation fails.
  explicit CircuitGenerator(GeneratorSpec spec);

  const GeneratorSpec &spec() const { return spec_; }
  std::size_t num_qubits() const override { return spec_.num_system_qubits(); }
  const std::vector<std::string> &parameter_names() const override {
    return spec_.circuit.parameter_names();
  }
  DensityMatrix state(std::span<const double> params) const override;
  double expectation(const ComplexMatrix &m, std::span<const double> params) const override;
  std::vector<double> expectation_gradient(const ComplexMatrix &m,
                                           std::span<const double> params,
                                           const Estimator *estimate = nullptr) const override;

  /// Expectation with one lowered rotation shifted.
  double shifted_expectation(const ComplexMatrix &m, std::span<const double> params,
                             const AngleShift *shift) const;
  /// Tr(M sigma) at +-pi/2 for every shift term of program().
  std::vector<Program::ShiftPair> shift_pairs(const ComplexMatrix &m,
                                              std::span<const double> params) const;
  const Program &program() const { return program_; }

private:
  ComplexMatrix system_state(std::span<const double> params, const AngleShift *shift) const;
  bool pure_output() const { return spec_.ancilla_sides.empty() && !spec_.channel; }

  GeneratorSpec spec_;
  Program program_;
};

class MixtureGenerator final : public Generator {
public:
  /// Parameter names are the selector's prefixed with "w." followed by each
  /// branch's prefixed with "b<k>.".
  explicit MixtureGenerator(MixtureGeneratorSpec spec);

  std::size_t num_qubits() const override { return branches_.front().num_qubits(); }
  const std::vector<std::string> &parameter_names() const override { return names_; }
  DensityMatrix state(std::span<const double> params) const override;
  double expectation(const ComplexMatrix &m, std::span<const double> params) const override;
  std::vector<double> expectation_gradient(const ComplexMatrix &m,
                                           std::span<const double> params,
                                           const Estimator *estimate = nullptr) const override;

  /// Branch weights for the selector slice of `params`.
  std::vector<double> weights(std::span<const double> params) const;

private:
  std::vector<double> selector_weights(std::span<const double> selector_params,
                                       const AngleShift *shift) const;
  std::span<const double> branch_params(std::span<const double> params, std::size_t k) const;

  Program selector_;
  std::vector<CircuitGenerator> branches_;
  std::vector<std::size_t> offsets_;
  std::vector<std::string> names_;
};

} // namespace qadv
