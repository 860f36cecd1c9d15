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

// Classical reference methods: PPT, the GHZ witness, random states and the
// game-versus-PPT confusion benchmark.

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "qadv/game.hpp"
#include "qadv/generator.hpp"
#include "qadv/state.hpp"

namespace qadv {

/// W_N = I/2 - |G_N><G_N|.
class WitnessOperator {
public:
  explicit WitnessOperator(std::size_t num_qubits);

  std::size_t num_qubits() const { return n_; }
  const ComplexMatrix &matrix() const { return w_; }
  /// Tr(W rho) = 1/2 - <G_N|rho|G_N>. Throws DimensionError on a size mismatch.
  double value(const DensityMatrix &rho) const;

private:
  std::size_t n_;
  ComplexMatrix w_;
};

/// Tr(W_N rho) with N = rho.num_qubits().
double witness_value(const DensityMatrix &rho);

enum class PptLabel { Ppt, Entangled };

std::string_view to_string(PptLabel label);

struct PptResult {
  double min_eigenvalue = 0.0;
  PptLabel label = PptLabel::Ppt;
  /// True when PPT also implies separability (2x2 and 2x3 cuts).
  bool exact = false;
};

/// Entangled iff the partial transpose has an eigenvalue below -1e-9.
PptResult ppt_verdict(const DensityMatrix &rho, const Bipartition &cut);

enum class StateFamily { RhoS, RhoE };

StateFamily state_family_from_string(std::string_view name);

struct WitnessRow {
  double p = 0.0;
  double value = 0.0;
};

/// Tr(W_2 rho(p)) over `grid`; each p must lie in [0, 1].
std::vector<WitnessRow> witness_sweep(StateFamily family, const std::vector<double> &grid);

/// G G^dagger / Tr(G G^dagger) with G a 2^n x rank matrix of standard
/// complex Gaussian entries, drawn row by row (real part, then imaginary).
DensityMatrix random_mixed_state(std::size_t num_qubits, std::size_t rank, std::uint64_t seed);

/// sigma_A (x) sigma_B, each factor a full-rank Ginibre state on its side.
DensityMatrix random_product_state(std::size_t qubits_a, std::size_t qubits_b,
                                   std::uint64_t seed);

enum class Ensemble { Ginibre, Product };

Ensemble ensemble_from_string(std::string_view name);
std::string_view to_string(Ensemble e);

struct ConfusionOptions {
  std::size_t samples = 500;
  std::uint64_t seed = 0;
  Ensemble ensemble = Ensemble::Ginibre;
  GameConfig game;
  /// Worker threads; 0 picks the hardware concurrency.
  std::size_t threads = 0;
  /// Samples with |min PT eigenvalue| at or below this are "near boundary".
  double boundary_margin = 0.05;
};

struct ConfusionSample {
  std::size_t index = 0;
  double min_pt_eigenvalue = 0.0;
  Label truth = Label::Separable;
  Label predicted = Label::Separable;
  double final_loss = 0.0;
};

/// Positive class = entangled.
struct ConfusionResult {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;
  std::size_t fn = 0;
  double accuracy = 0.0;
  std::size_t boundary_excluded = 0;
  double boundary_excluded_accuracy = 0.0;
  std::vector<ConfusionSample> samples;
};

/// Two-qubit states only: PPT is the ground truth there.
ConfusionResult confusion_matrix(const ConfusionOptions &opts, const Generator &gen,
                                 const DiscriminatorModel &disc);

} // namespace qadv
