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

// The min-max game between a separable generator and a projective
// discriminator. L = Tr(M rho) / 2 + Tr((I - M) sigma) / 2; the
// discriminator minimizes L, the generator maximizes it.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qadv/circuit.hpp"
#include "qadv/generator.hpp"
#include "qadv/random.hpp"
#include "qadv/state.hpp"

namespace qadv {

/// U_D plus a readout qubit; the POVM element is U_D (I (x) |0><0|) U_D^dagger.
struct Discriminator {
  ParamCircuit circuit;
  std::size_t readout = 0;
};

/// Compiled discriminator. Expectations are evaluated on the marginal of the
/// qubits the circuit actually touches (plus the readout).
class DiscriminatorModel {
public:
  explicit DiscriminatorModel(Discriminator d);

  std::size_t num_qubits() const { return d_.circuit.num_qubits(); }
  std::size_t num_params() const { return d_.circuit.num_params(); }
  const std::vector<std::string> &parameter_names() const { return d_.circuit.parameter_names(); }
  const std::vector<std::size_t> &active_qubits() const { return active_; }
  const Discriminator &spec() const { return d_; }

  /// Full 2^n x 2^n projector.
  ComplexMatrix povm(std::span<const double> gamma) const;
  /// Projector on the active register, optionally with one rotation shifted.
  ComplexMatrix local_povm(std::span<const double> gamma, const AngleShift *shift = nullptr) const;
  /// Marginal of `rho` on the active qubits.
  ComplexMatrix reduce(const DensityMatrix &rho) const;
  /// d [Tr(M rho) - Tr(M sigma)] / d gamma for marginals on the active
  /// register. With `estimate`, each shifted expectation is sampled.
  std::vector<double> gradient(std::span<const double> gamma, const ComplexMatrix &rho_local,
                               const ComplexMatrix &sigma_local,
                               const Estimator *estimate = nullptr) const;

private:
  Discriminator d_;
  std::vector<std::size_t> active_;
  Program local_;
  Program full_;
  std::size_t local_readout_ = 0;
};

ComplexMatrix povm_element(const Discriminator &d, const ParamVector &gamma);

/// Exact Tr(M rho) for shots == 0, otherwise the mean of `shots` Bernoulli
/// draws. Throws NumericalError if the exact value leaves [-1e-9, 1 + 1e-9].
double expectation(const ComplexMatrix &m, const DensityMatrix &rho, std::uint64_t shots,
                   Rng *rng);

double loss(const DensityMatrix &rho, const DensityMatrix &sigma, const Discriminator &d,
            const ParamVector &gamma, std::uint64_t shots = 0, Rng *rng = nullptr);

/// |Tr(M sigma) - Tr(M rho)| / 2
double measured_distance(const DensityMatrix &rho, const DensityMatrix &sigma,
                         const Discriminator &d, const ParamVector &gamma);

/// [f(theta_i + pi/2) - f(theta_i - pi/2)] / 2. Throws ShiftRuleError unless
/// parameter `index` of `c` feeds exactly one angle slot of a gate that obeys
/// the two-term rule.
double grad_parameter_shift(const ParamCircuit &c,
                            const std::function<double(const ParamVector &)> &f,
                            const ParamVector &params, std::size_t index);

/// Full gradient of f(params, shift) through the lowered rotations of
/// `program`; exact for every gate kind, CU3 included.
std::vector<double> shift_rule_gradient(
    const Program &program, std::span<const double> params,
    const std::function<double(std::span<const double>, const AngleShift *)> &f);

enum class OptimizerKind { GradientDescent, Adam };

std::string_view to_string(OptimizerKind kind);
OptimizerKind optimizer_from_string(std::string_view name);

enum class Schedule { Constant, Inverse, Cosine };

std::string_view to_string(Schedule s);
Schedule schedule_from_string(std::string_view name);

struct GameConfig {
  std::size_t iterations = 400;
  std::size_t generator_steps = 1;
  std::size_t discriminator_steps = 10;
  double lr_generator = 0.05;
  double lr_discriminator = 0.1;
  /// Step-size schedule: constant, inverse (lr / (1 + lr_decay (t - 1))) or
  /// cosine (from lr down to lr * lr_final_fraction at t = iterations).
  Schedule schedule = Schedule::Cosine;
  double lr_decay = 0.0;
  double lr_final_fraction = 0.01;
  OptimizerKind optimizer = OptimizerKind::Adam;
  double epsilon = 0.02;
  std::uint64_t shots = 0;
  std::size_t window = 5;
  std::size_t restarts = 3;
  /// Stop a run once the trailing window sits inside the tolerance band,
  /// but not before this many iterations.
  bool early_stop = false;
  std::size_t min_iterations = 50;
  /// Skip the remaining restarts after one is labeled separable.
  bool stop_on_separable = false;
  /// Keep theta fixed (only the discriminator trains).
  bool freeze_generator = false;
  bool record_parameters = true;
  std::uint64_t seed = 0;

  /// Throws ConfigError on out-of-range values.
  void validate() const;
};

/// Multiplier applied to both learning rates at iteration t (1-based).
double schedule_factor(const GameConfig &cfg, std::size_t t);

struct IterationRecord {
  std::size_t t = 0;
  double loss = 0.0;
  double exp_rho = 0.0;
  double exp_sigma = 0.0;
  double distance = 0.0;
  /// Exact loss of the running average of the generated states.
  double avg_loss = 0.0;
  std::vector<double> theta;
  std::vector<double> gamma;
};

enum class Label { Separable, Entangled };

std::string_view to_string(Label label);

struct Verdict {
  Label label = Label::Entangled;
  double final_loss = 0.0;
  double gap = 0.0;
  std::size_t iterations = 0;
  std::uint64_t seed = 0;
};

struct GameTrace {
  std::vector<IterationRecord> records;
  Verdict verdict;
  std::vector<double> final_theta;
  std::vector<double> final_gamma;
  std::optional<DensityMatrix> final_state;
};

/// Optional starting point; missing entries are drawn uniformly in [0, 2 pi).
struct TrainInit {
  std::optional<std::vector<double>> theta;
  std::optional<std::vector<double>> gamma;
};

/// One run of the alternating game. Each iteration takes generator ascent
/// steps, then discriminator descent steps, then records the loss.
GameTrace train(const DensityMatrix &rho, const Generator &gen, const DiscriminatorModel &disc,
                const GameConfig &cfg, const TrainInit &init = {});

GameTrace train(const DensityMatrix &rho, const GeneratorSpec &gen, const Discriminator &d,
                const GameConfig &cfg);

/// Separable iff |L - 1/2| <= epsilon on each of the last `window` records.
Verdict verdict_from_records(const std::vector<IterationRecord> &records, const GameConfig &cfg);

struct DetectionResult {
  Verdict verdict;
  std::vector<GameTrace> runs;
  /// Run whose verdict is reported: the first separable one, otherwise the
  /// one with the smallest final gap.
  std::size_t selected = 0;
  std::size_t separable_runs = 0;
};

/// cfg.restarts runs with seeds derived from cfg.seed; separable if any run is.
DetectionResult detect(const DensityMatrix &rho, const Generator &gen,
                       const DiscriminatorModel &disc, const GameConfig &cfg);

struct BoundCheck {
  std::size_t t = 0;
  double bound = 0.0;
  double gap = 0.0;
  bool satisfied = false;
};

/// The 3 sqrt(N/T) bound is proven for a different optimizer, so this is
/// informational only.
struct BoundReport {
  bool applicable = false;
  std::vector<BoundCheck> checks;
  bool all_satisfied = true;
  std::size_t violations = 0;
};

double convergence_bound(std::size_t num_qubits, std::size_t t);

BoundReport convergence_bound_monitor(const GameTrace &trace, std::size_t num_qubits);

} // namespace qadv
