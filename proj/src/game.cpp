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
#include "qadv/game.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "qadv/errors.hpp"

namespace qadv {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2;

/// Projector onto readout = |0> over `n` qubits.
ComplexMatrix readout_projector(std::size_t readout, std::size_t n) {
  const auto dim = static_cast<Eigen::Index>(dimension_of(n));
  const auto mask = qubit_mask(readout, n);
  ComplexMatrix p = ComplexMatrix::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    if ((static_cast<std::uint64_t>(i) & mask) == 0) {
      p(i, i) = 1.0;
    }
  }
  return p;
}

double checked_probability(double v) {
  if (!std::isfinite(v) || v < -1e-9 || v > 1.0 + 1e-9) {
    throw NumericalError("expectation " + std::to_string(v) + " is not a probability");
  }
  return std::clamp(v, 0.0, 1.0);
}

class Optimizer {
public:
  Optimizer(OptimizerKind kind, std::size_t n) : kind_(kind), m_(n, 0.0), v_(n, 0.0) {}

  /// direction +1 ascends, -1 descends.
  void step(std::vector<double> &x, const std::vector<double> &grad, double lr,
            double direction) {
    for (double g : grad) {
      if (!std::isfinite(g)) {
        throw NumericalError("non-finite gradient; the learning rate is probably too large");
      }
    }
    if (kind_ == OptimizerKind::GradientDescent) {
      for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] += direction * lr * grad[i];
      }
      return;
    }
    constexpr double b1 = 0.9;
    constexpr double b2 = 0.999;
    constexpr double eps = 1e-8;
    ++steps_;
    const double c1 = 1.0 - std::pow(b1, static_cast<double>(steps_));
    const double c2 = 1.0 - std::pow(b2, static_cast<double>(steps_));
    for (std::size_t i = 0; i < x.size(); ++i) {
      m_[i] = b1 * m_[i] + (1.0 - b1) * grad[i];
      v_[i] = b2 * v_[i] + (1.0 - b2) * grad[i] * grad[i];
      x[i] += direction * lr * (m_[i] / c1) / (std::sqrt(v_[i] / c2) + eps);
    }
  }

private:
  OptimizerKind kind_;
  std::vector<double> m_;
  std::vector<double> v_;
  std::size_t steps_ = 0;
};

} // namespace

// ---------------------------------------------------------------------------

DiscriminatorModel::DiscriminatorModel(Discriminator d)
    : d_(std::move(d)), local_(Program::compile(ParamCircuit(1))),
      full_(Program::compile(d_.circuit)) {
  const std::size_t n = d_.circuit.num_qubits();
  if (d_.readout >= n) {
    throw InvalidArgument("readout qubit " + std::to_string(d_.readout) + " outside the " +
                          std::to_string(n) + "-qubit discriminator");
  }
  std::set<std::size_t> touched{d_.readout};
  for (const auto &g : d_.circuit.gates()) {
    touched.insert(g.qubits.begin(), g.qubits.end());
  }
  active_.assign(touched.begin(), touched.end());
  auto local_index = [this](std::size_t q) {
    return static_cast<std::size_t>(std::find(active_.begin(), active_.end(), q) -
                                    active_.begin());
  };
  ParamCircuit local(active_.size());
  for (const auto &name : d_.circuit.parameter_names()) {
    local.declare_parameter(name);
  }
  for (auto g : d_.circuit.gates()) {
    for (auto &q : g.qubits) {
      q = local_index(q);
    }
    local.append(std::move(g));
  }
  local_ = Program::compile(local);
  local_readout_ = local_index(d_.readout);
}

ComplexMatrix DiscriminatorModel::povm(std::span<const double> gamma) const {
  if (gamma.size() != num_params()) {
    throw InvalidArgument("discriminator expects " + std::to_string(num_params()) +
                          " parameters, got " + std::to_string(gamma.size()));
  }
  ComplexMatrix p = readout_projector(d_.readout, num_qubits());
  full_.conjugate(p, gamma);
  return p;
}

ComplexMatrix DiscriminatorModel::local_povm(std::span<const double> gamma,
                                             const AngleShift *shift) const {
  if (gamma.size() != num_params()) {
    throw InvalidArgument("discriminator expects " + std::to_string(num_params()) +
                          " parameters, got " + std::to_string(gamma.size()));
  }
  ComplexMatrix p = readout_projector(local_readout_, active_.size());
  local_.conjugate(p, gamma, shift);
  return p;
}

ComplexMatrix DiscriminatorModel::reduce(const DensityMatrix &rho) const {
  if (rho.num_qubits() != num_qubits()) {
    throw DimensionError("state has " + std::to_string(rho.num_qubits()) +
                         " qubits, discriminator " + std::to_string(num_qubits()));
  }
  if (active_.size() == num_qubits()) {
    return rho.matrix();
  }
  std::vector<std::size_t> traced;
  for (std::size_t q = 0; q < num_qubits(); ++q) {
    if (!std::binary_search(active_.begin(), active_.end(), q)) {
      traced.push_back(q);
    }
  }
  return partial_trace(rho, traced).matrix();
}

std::vector<double> DiscriminatorModel::gradient(std::span<const double> gamma,
                                                 const ComplexMatrix &rho_local,
                                                 const ComplexMatrix &sigma_local,
                                                 const Estimator *estimate) const {
  if (gamma.size() != num_params()) {
    throw InvalidArgument("discriminator expects " + std::to_string(num_params()) +
                          " parameters, got " + std::to_string(gamma.size()));
  }
  const ComplexMatrix p = readout_projector(local_readout_, active_.size());
  std::vector<Program::ShiftPair> diff;
  if (estimate == nullptr) {
    diff = local_.shift_pairs(gamma, p, rho_local - sigma_local);
  } else {
    const auto r = local_.shift_pairs(gamma, p, rho_local);
    const auto s = local_.shift_pairs(gamma, p, sigma_local);
    diff.resize(r.size());
    for (std::size_t j = 0; j < r.size(); ++j) {
      diff[j].plus = (*estimate)(r[j].plus) - (*estimate)(s[j].plus);
      diff[j].minus = (*estimate)(r[j].minus) - (*estimate)(s[j].minus);
    }
  }
  std::vector<double> grad(num_params(), 0.0);
  const auto &terms = local_.shift_terms();
  for (std::size_t j = 0; j < terms.size(); ++j) {
    for (const auto &[index, coeff] : terms[j].coefficients) {
      grad[index] += coeff * 0.5 * (diff[j].plus - diff[j].minus);
    }
  }
  return grad;
}

ComplexMatrix povm_element(const Discriminator &d, const ParamVector &gamma) {
  return DiscriminatorModel(d).povm(gamma.span());
}

double expectation(const ComplexMatrix &m, const DensityMatrix &rho, std::uint64_t shots,
                   Rng *rng) {
  if (m.rows() != static_cast<Eigen::Index>(rho.dim()) || m.cols() != m.rows()) {
    throw DimensionError("measurement operator and state dimensions differ");
  }
  const double p = checked_probability(trace_product_real(m, rho.matrix()));
  if (shots == 0) {
    return p;
  }
  if (rng == nullptr) {
    throw InvalidArgument("shot sampling needs a random number generator");
  }
  return rng->bernoulli_mean(p, shots);
}

double loss(const DensityMatrix &rho, const DensityMatrix &sigma, const Discriminator &d,
            const ParamVector &gamma, std::uint64_t shots, Rng *rng) {
  if (rho.num_qubits() != sigma.num_qubits()) {
    throw DimensionError("loss: rho and sigma have different qubit counts");
  }
  const ComplexMatrix m = povm_element(d, gamma);
  return 0.5 * expectation(m, rho, shots, rng) + 0.5 * (1.0 - expectation(m, sigma, shots, rng));
}

double measured_distance(const DensityMatrix &rho, const DensityMatrix &sigma,
                         const Discriminator &d, const ParamVector &gamma) {
  if (rho.num_qubits() != sigma.num_qubits()) {
    throw DimensionError("measured_distance: rho and sigma have different qubit counts");
  }
  const ComplexMatrix m = povm_element(d, gamma);
  return 0.5 * std::abs(expectation(m, sigma, 0, nullptr) - expectation(m, rho, 0, nullptr));
}

double grad_parameter_shift(const ParamCircuit &c,
                            const std::function<double(const ParamVector &)> &f,
                            const ParamVector &params, std::size_t index) {
  if (index >= c.num_params() || params.size() != c.num_params()) {
    throw InvalidArgument("grad_parameter_shift: parameter index or vector length mismatch");
  }
  const std::string &name = c.parameter_names()[index];
  std::size_t uses = 0;
  for (const auto &g : c.gates()) {
    for (const auto &slot : g.angles) {
      if (slot.name != name) {
        continue;
      }
      ++uses;
      if (!has_two_term_shift_rule(g.kind)) {
        throw ShiftRuleError("parameter '" + name + "' feeds " + std::string(to_string(g.kind)) +
                             ", which has no two-term shift rule");
      }
    }
  }
  if (uses != 1) {
    throw ShiftRuleError("parameter '" + name + "' feeds " + std::to_string(uses) +
                         " angle slots; the two-term rule needs exactly one");
  }
  std::vector<double> shifted = params.values();
  shifted[index] = params[index] + kHalfPi;
  const double plus = f(ParamVector(shifted));
  shifted[index] = params[index] - kHalfPi;
  const double minus = f(ParamVector(shifted));
  return 0.5 * (plus - minus);
}

std::vector<double> shift_rule_gradient(
    const Program &program, std::span<const double> params,
    const std::function<double(std::span<const double>, const AngleShift *)> &f) {
  std::vector<double> grad(program.num_params(), 0.0);
  const auto &terms = program.shift_terms();
  for (std::size_t j = 0; j < terms.size(); ++j) {
    const AngleShift plus{j, kHalfPi};
    const AngleShift minus{j, -kHalfPi};
    const double d = 0.5 * (f(params, &plus) - f(params, &minus));
    for (const auto &[index, coeff] : terms[j].coefficients) {
      grad[index] += coeff * d;
    }
  }
  return grad;
}

// ---------------------------------------------------------------------------

std::string_view to_string(OptimizerKind kind) {
  return kind == OptimizerKind::Adam ? "adam" : "gd";
}

OptimizerKind optimizer_from_string(std::string_view name) {
  if (name == "adam") {
    return OptimizerKind::Adam;
  }
  if (name == "gd") {
    return OptimizerKind::GradientDescent;
  }
  throw ConfigError("unknown optimizer '" + std::string(name) + "' (expected adam or gd)");
}

std::string_view to_string(Schedule s) {
  switch (s) {
  case Schedule::Constant:
    return "constant";
  case Schedule::Inverse:
    return "inverse";
  case Schedule::Cosine:
    return "cosine";
  }
  return "constant";
}

Schedule schedule_from_string(std::string_view name) {
  if (name == "constant") {
    return Schedule::Constant;
  }
  if (name == "inverse") {
    return Schedule::Inverse;
  }
  if (name == "cosine") {
    return Schedule::Cosine;
  }
  throw ConfigError("unknown schedule '" + std::string(name) +
                    "' (expected constant, inverse or cosine)");
}

double schedule_factor(const GameConfig &cfg, std::size_t t) {
  switch (cfg.schedule) {
  case Schedule::Constant:
    return 1.0;
  case Schedule::Inverse:
    return 1.0 / (1.0 + cfg.lr_decay * static_cast<double>(t - 1));
  case Schedule::Cosine: {
    const double progress = cfg.iterations > 1 ? static_cast<double>(t - 1) /
                                                     static_cast<double>(cfg.iterations - 1)
                                               : 1.0;
    const double f = cfg.lr_final_fraction;
    return f + 0.5 * (1.0 - f) * (1.0 + std::cos(std::numbers::pi * progress));
  }
  }
  return 1.0;
}

std::string_view to_string(Label label) {
  return label == Label::Separable ? "separable" : "entangled";
}

void GameConfig::validate() const {
  auto require = [](bool ok, const std::string &what) {
    if (!ok) {
      throw ConfigError("game config: " + what);
    }
  };
  require(iterations > 0, "iterations must be positive");
  require(generator_steps > 0, "generator_steps must be positive");
  require(discriminator_steps > 0, "discriminator_steps must be positive");
  require(lr_generator > 0 && std::isfinite(lr_generator), "lr_generator must be positive");
  require(lr_discriminator > 0 && std::isfinite(lr_discriminator),
          "lr_discriminator must be positive");
  require(lr_decay >= 0 && std::isfinite(lr_decay), "lr_decay must be non-negative");
  require(lr_final_fraction > 0 && lr_final_fraction <= 1, "lr_final_fraction must lie in (0, 1]");
  require(epsilon > 0 && epsilon < 0.5, "epsilon must lie in (0, 0.5)");
  require(window > 0, "window must be positive");
  require(restarts > 0, "restarts must be positive");
}

Verdict verdict_from_records(const std::vector<IterationRecord> &records, const GameConfig &cfg) {
  Verdict v;
  v.seed = cfg.seed;
  v.iterations = records.size();
  if (records.empty()) {
    return v;
  }
  v.final_loss = records.back().loss;
  v.gap = std::abs(v.final_loss - 0.5);
  if (records.size() >= cfg.window) {
    const bool in_band = std::all_of(records.end() - static_cast<std::ptrdiff_t>(cfg.window),
                                     records.end(), [&](const IterationRecord &r) {
                                       return std::abs(r.loss - 0.5) <= cfg.epsilon;
                                     });
    v.label = in_band ? Label::Separable : Label::Entangled;
  }
  return v;
}

GameTrace train(const DensityMatrix &rho, const Generator &gen, const DiscriminatorModel &disc,
                const GameConfig &cfg, const TrainInit &init) {
  cfg.validate();
  if (gen.num_qubits() != rho.num_qubits() || disc.num_qubits() != rho.num_qubits()) {
    throw DimensionError("state, generator and discriminator qubit counts differ (" +
                         std::to_string(rho.num_qubits()) + ", " +
                         std::to_string(gen.num_qubits()) + ", " +
                         std::to_string(disc.num_qubits()) + ")");
  }
  Rng rng(cfg.seed);
  std::vector<double> theta = rng.angles(gen.num_params());
  std::vector<double> gamma = rng.angles(disc.num_params());
  if (init.theta) {
    if (init.theta->size() != theta.size()) {
      throw InvalidArgument("initial theta has the wrong length");
    }
    theta = *init.theta;
  }
  if (init.gamma) {
    if (init.gamma->size() != gamma.size()) {
      throw InvalidArgument("initial gamma has the wrong length");
    }
    gamma = *init.gamma;
  }

  Rng shot_rng(Rng::derive(cfg.seed, 1));
  const Estimator estimator = [&shot_rng, &cfg](double v) {
    return shot_rng.bernoulli_mean(std::clamp(v, 0.0, 1.0), cfg.shots);
  };
  const Estimator *est = cfg.shots > 0 ? &estimator : nullptr;
  auto estimate = [est](double v) { return est ? (*est)(v) : v; };

  Optimizer opt_g(cfg.optimizer, theta.size());
  Optimizer opt_d(cfg.optimizer, gamma.size());
  const ComplexMatrix rho_local = disc.reduce(rho);
  ComplexMatrix sigma_sum = ComplexMatrix::Zero(rho_local.rows(), rho_local.cols());

  GameTrace trace;
  for (std::size_t t = 1; t <= cfg.iterations; ++t) {
    const double decay = schedule_factor(cfg, t);

    if (!cfg.freeze_generator) {
      for (std::size_t s = 0; s < cfg.generator_steps; ++s) {
        const ComplexMatrix m = disc.povm(gamma);
        auto g = gen.expectation_gradient(m, theta, est);
        for (auto &x : g) {
          x *= -0.5;
        }
        opt_g.step(theta, g, cfg.lr_generator * decay, +1.0);
      }
    }

    const ComplexMatrix sigma_local = disc.reduce(gen.state(theta));
    for (std::size_t s = 0; s < cfg.discriminator_steps; ++s) {
      auto g = disc.gradient(gamma, rho_local, sigma_local, est);
      for (auto &x : g) {
        x *= 0.5;
      }
      opt_d.step(gamma, g, cfg.lr_discriminator * decay, -1.0);
    }

    const ComplexMatrix m_local = disc.local_povm(gamma);
    IterationRecord r;
    r.t = t;
    const double exact_rho = checked_probability(trace_product_real(m_local, rho_local));
    const double exact_sigma = checked_probability(trace_product_real(m_local, sigma_local));
    r.exp_rho = estimate(exact_rho);
    r.exp_sigma = estimate(exact_sigma);
    r.loss = 0.5 * r.exp_rho + 0.5 * (1.0 - r.exp_sigma);
    r.distance = 0.5 * std::abs(r.exp_sigma - r.exp_rho);
    sigma_sum += sigma_local;
    const double avg_sigma = trace_product_real(m_local, sigma_sum) / static_cast<double>(t);
    r.avg_loss = 0.5 * exact_rho + 0.5 * (1.0 - avg_sigma);
    if (cfg.record_parameters) {
      r.theta = theta;
      r.gamma = gamma;
    }
    trace.records.push_back(std::move(r));

    if (cfg.early_stop && t >= std::max(cfg.min_iterations, cfg.window) &&
        verdict_from_records(trace.records, cfg).label == Label::Separable) {
      break;
    }
  }
  trace.verdict = verdict_from_records(trace.records, cfg);
  trace.final_theta = theta;
  trace.final_gamma = gamma;
  trace.final_state = gen.state(theta);
  return trace;
}

GameTrace train(const DensityMatrix &rho, const GeneratorSpec &gen, const Discriminator &d,
                const GameConfig &cfg) {
  return train(rho, CircuitGenerator(gen), DiscriminatorModel(d), cfg);
}

DetectionResult detect(const DensityMatrix &rho, const Generator &gen,
                       const DiscriminatorModel &disc, const GameConfig &cfg) {
  cfg.validate();
  DetectionResult out;
  for (std::size_t r = 0; r < cfg.restarts; ++r) {
    GameConfig run_cfg = cfg;
    run_cfg.seed = Rng::derive(cfg.seed, 100 + r);
    out.runs.push_back(train(rho, gen, disc, run_cfg));
    if (out.runs.back().verdict.label == Label::Separable) {
      ++out.separable_runs;
      if (cfg.stop_on_separable) {
        break;
      }
    }
  }
  std::size_t best = 0;
  for (std::size_t i = 0; i < out.runs.size(); ++i) {
    const auto &v = out.runs[i].verdict;
    if (v.label == Label::Separable) {
      best = i;
      break;
    }
    if (v.gap < out.runs[best].verdict.gap) {
      best = i;
    }
  }
  out.selected = best;
  out.verdict = out.runs[best].verdict;
  return out;
}

double convergence_bound(std::size_t num_qubits, std::size_t t) {
  return 3.0 * std::sqrt(static_cast<double>(num_qubits) / static_cast<double>(t));
}

BoundReport convergence_bound_monitor(const GameTrace &trace, std::size_t num_qubits) {
  BoundReport report;
  report.applicable = trace.verdict.label == Label::Separable;
  for (const auto &r : trace.records) {
    BoundCheck c;
    c.t = r.t;
    c.bound = convergence_bound(num_qubits, r.t);
    c.gap = std::abs(r.avg_loss - 0.5);
    c.satisfied = c.gap <= c.bound;
    if (!c.satisfied) {
      ++report.violations;
    }
    report.checks.push_back(c);
  }
  report.all_satisfied = report.violations == 0;
  return report;
}

} // namespace qadv
