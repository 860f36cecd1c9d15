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

// JSON forms: density matrices as {num_qubits, re, im} (row-major nested
// arrays), circuits as a list of {kind, qubits, slots} records where each
// slot is a parameter name or a fixed angle.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "qadv/circuit.hpp"
#include "qadv/game.hpp"
#include "qadv/state.hpp"

namespace qadv {

using Json = nlohmann::json;

Json to_json(const DensityMatrix &rho);
/// Throws ConfigError for a malformed document, InvalidStateError for a
/// matrix that is not a state.
DensityMatrix density_matrix_from_json(const Json &j, std::size_t max_qubits = kDefaultMaxQubits);

DensityMatrix load_density_matrix(const std::filesystem::path &path,
                                  std::size_t max_qubits = kDefaultMaxQubits);
void save_density_matrix(const std::filesystem::path &path, const DensityMatrix &rho);

Json to_json(const ParamCircuit &c);
/// `num_qubits` defaults to one more than the largest qubit index used. The
/// key "params" is accepted as a synonym for "slots".
ParamCircuit circuit_from_json(const Json &j, std::optional<std::size_t> num_qubits = {});

Json to_json(const Verdict &v);
Json to_json(const GameConfig &cfg);
/// Reads any subset of the GameConfig fields over `base`.
GameConfig game_config_from_json(const Json &j, GameConfig base = {});

/// Per-iteration records including parameter snapshots.
Json to_json(const GameTrace &trace);

/// 64-bit FNV-1a of the compact dump, as 16 hex digits.
std::string config_hash(const Json &j);

/// Reads a whole file; throws ConfigError if it cannot be opened.
std::string read_text_file(const std::filesystem::path &path);
/// Writes `text` exactly; throws ConfigError on failure.
void write_text_file(const std::filesystem::path &path, const std::string &text);

} // namespace qadv
