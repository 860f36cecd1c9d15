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

// Experiment configuration and the command implementations behind the
// qadv tool. A config is one JSON document; every field has a default and
// can be overridden with "--set dotted.key=value".

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "qadv/csv.hpp"
#include "qadv/game.hpp"
#include "qadv/oracles.hpp"
#include "qadv/presets.hpp"
#include "qadv/serialization.hpp"

namespace qadv {

enum class ExperimentKind { Detect, ReproducePure, ReproduceMixed, WitnessSweep, Confusion };

std::string_view to_string(ExperimentKind kind);
ExperimentKind experiment_kind_from_string(std::string_view name);

/// kind: rho_s, rho_e (with p), rho_g23, rho_g5, ghz (num_qubits),
/// ginibre (num_qubits, rank, seed) or file (path).
struct StateSpec {
  std::string kind = "rho_e";
  double p = 0.8;
  std::size_t num_qubits = 2;
  std::size_t rank = 4;
  std::uint64_t seed = 0;
  std::string path;
};

struct ConfusionSettings {
  std::size_t samples = 500;
  Ensemble ensemble = Ensemble::Ginibre;
  std::size_t threads = 0;
  double boundary_margin = 0.05;
  /// Tolerance band used for the benchmark in place of game.epsilon. Random
  /// entangled states sit much closer to the separable set than the named
  /// benchmarks, so the default band is narrower.
  double epsilon = 0.004;
  bool stop_on_separable = true;
};

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::Detect;
  StateSpec state;
  /// Empty means the generator's own cut.
  std::vector<std::size_t> cut_a;
  std::vector<std::size_t> cut_b;
  /// Empty means a default matched to the state size.
  std::string generator;
  std::string discriminator;
  GameConfig game;
  ConfusionSettings confusion;
  std::vector<double> grid;
  std::filesystem::path out_dir = "out";
  /// Copied into game.seed and used for the confusion ensemble.
  std::uint64_t seed = 0;

  /// Throws ConfigError on unknown keys or bad values.
  static ExperimentConfig from_json(const Json &j);
  Json to_json() const;
  /// Hash of the canonical to_json() dump.
  std::string hash() const;
};

/// Applies "a.b.c=value" to `j`. The value is parsed as JSON when possible,
/// otherwise stored as a string.
void apply_override(Json &j, std::string_view assignment);

/// Reads `path` (if any), applies the overrides in order and parses.
ExperimentConfig load_experiment_config(const std::optional<std::filesystem::path> &path,
                                        const std::vector<std::string> &overrides);

/// Builds the configured input state. Throws ConfigError for unknown kinds.
DensityMatrix build_state(const StateSpec &spec);

/// Defaults: five qubits use the pure presets, two qubits the mixture
/// generator with the deep discriminator.
std::string default_generator(std::size_t num_qubits);
std::string default_discriminator(std::size_t num_qubits);

/// Cut of a generator preset.
Bipartition generator_cut(const Preset &preset);

/// One row per record: t, loss, exp_rho, exp_sigma, distance.
CsvTable trace_table(const GameTrace &trace);

/// Exit code 0 when the verdict is separable, 1 when entangled. Writes
/// verdict.json, trace.csv and bound.csv.
int cmd_detect(const ExperimentConfig &cfg, std::ostream &log);

struct ReproducedRun {
  std::string name;
  DetectionResult detection;
  /// F(rho, sigma_G) after every iteration of the selected run.
  std::vector<double> fidelity;
  /// First iteration whose loss is within epsilon of 1/2, if any.
  std::optional<std::size_t> band_entry;
};

/// Runs the two benchmark detections of one kind and writes
/// trace_<state>.csv, plot_<kind>.csv and summary_<kind>.json.
std::vector<ReproducedRun> cmd_reproduce(const ExperimentConfig &cfg, bool mixed,
                                         std::ostream &log);

/// Writes sweep.csv over cfg.grid (default 0, 0.1, ..., 1).
CsvTable cmd_witness_sweep(const ExperimentConfig &cfg, std::ostream &log);

/// Writes confusion.json and confusion_samples.csv.
ConfusionResult cmd_confusion(const ExperimentConfig &cfg, std::ostream &log);

/// Dispatches on cfg.kind; returns the process exit code.
int run_experiment(const ExperimentConfig &cfg, std::ostream &log);

} // namespace qadv
