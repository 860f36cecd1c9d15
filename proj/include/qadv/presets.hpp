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

// Named ansatz circuits. Layouts are layered: a U3 (or RZ RY RZ) layer on
// every qubit, then the block's fixed entanglers, repeated per block.

#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qadv/channels.hpp"
#include "qadv/circuit.hpp"
#include "qadv/game.hpp"
#include "qadv/generator.hpp"

namespace qadv {

/// Five qubits, cut {0,1}:{2,3,4}, no ancillas. Three U3 layers (15 gates);
/// block one entangles with CZ(0,1) and CZ(2,3), block two with the
/// controlled-U3 pair CU3(3->4), CU3(2->4) (6 angles, all inside B).
GeneratorSpec pure_generator_5q();

/// Two RZ RY RZ blocks on qubits 1 and 4 separated by CZ(1,4); readout 4.
Discriminator pure_discriminator_5q();

/// Qubits 0, 1 (system, cut {0}:{1}) and ancilla 2 (side A). Two U3 layers,
/// no two-qubit gates, then dephasing with parameter p on qubit 0.
GeneratorSpec mixed_generator_2q(double p = 0.8);

/// Two RZ RY RZ blocks on qubits 0 and 1 separated by one CZ; readout 1.
Discriminator mixed_discriminator_2q();

/// Four U3 (x) U3 product branches weighted by a two-qubit selector
/// (RY, RY, controlled-RY). Reaches every two-qubit separable state.
MixtureGeneratorSpec mixture_generator_2q();

/// U3 layers interleaved with three CZs on two qubits; readout 1. Reaches
/// every rank-2 projector.
Discriminator deep_discriminator_2q();

/// H on qubit 0 followed by a CNOT chain.
ParamCircuit ghz_preparation(std::size_t num_qubits);
/// H on qubit 0.
ParamCircuit psi_s_preparation();
/// H(0), CNOT(0,1), X(1).
ParamCircuit psi_e_preparation();

using Preset = std::variant<ParamCircuit, GeneratorSpec, MixtureGeneratorSpec, Discriminator>;

/// Looks up a preset by name; "ghz_preparation(N)" takes its qubit count in
/// parentheses. Throws ConfigError for unknown names.
Preset preset_ansatz(std::string_view name);

std::vector<std::string> preset_names();

/// Generator for a generator-type preset; throws ConfigError otherwise.
std::unique_ptr<Generator> make_generator(const Preset &preset);
/// Discriminator for a discriminator-type preset; throws ConfigError
/// otherwise.
Discriminator as_discriminator(const Preset &preset);

} // namespace qadv
