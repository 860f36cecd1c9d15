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
#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "qadv/benchmarks.hpp"
#include "qadv/errors.hpp"
#include "qadv/game.hpp"
#include "qadv/oracles.hpp"
#include "qadv/presets.hpp"
#include "qadv/random.hpp"

namespace qadv {
namespace {

ParamVector random_gamma(const Discriminator &d, std::uint64_t seed) {
  Rng rng(seed);
  return ParamVector(rng.angles(d.circuit.num_params()));
}

TEST(Loss, MatchesDirectFormula) {
  const Discriminator d = deep_discriminator_2q();
  const ParamVector gamma = random_gamma(d, 1);
  const DensityMatrix rho = random_mixed_state(2, 4, 2);
  const DensityMatrix sigma = random_mixed_state(2, 4, 3);
  const ComplexMatrix m = povm_element(d, gamma);
  const double direct = 0.5 * (m * rho.matrix()).trace().real() +
                        0.5 * (1.0 - (m * sigma.matrix()).trace().real());
  EXPECT_NEAR(loss(rho, sigma, d, gamma), direct, 1e-14);
  EXPECT_NEAR(measured_distance(rho, sigma, d, gamma),
              0.5 * std::abs((m * (rho.matrix() - sigma.matrix())).trace().real()), 1e-14);
}

TEST(Loss, IsOneHalfWhenGeneratorMatchesInput) {
  const Discriminator d = pure_discriminator_5q();
  const DensityMatrix rho = build_pure_benchmarks().rho_g23;
  for (std::uint64_t s = 0; s < 10; ++s) {
    EXPECT_NEAR(loss(rho, rho, d, random_gamma(d, s)), 0.5, 1e-14);
  }
}

TEST(Loss, InvariantUnderFullTurns) {
  const Discriminator d = deep_discriminator_2q();
  const ParamVector gamma = random_gamma(d, 14);
  std::vector<double> turned = gamma.values();
  for (auto &g : turned) {
    g += 2 * std::numbers::pi;
  }
  const DensityMatrix rho = random_mixed_state(2, 4, 15);
  const DensityMatrix sigma = random_mixed_state(2, 4, 16);
  EXPECT_NEAR(loss(rho, sigma, d, gamma), loss(rho, sigma, d, ParamVector(turned)), 1e-10);
}

TEST(Loss, PovmIsProjectorOfHalfRank) {
  const Discriminator d = pure_discriminator_5q();
  const ComplexMatrix m = povm_element(d, random_gamma(d, 4));
  EXPECT_LT((m * m - m).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_NEAR(m.trace().real(), 16.0, 1e-12);
}

TEST(Expectation, ShotEstimateIsSeededAndUnbiased) {
  const Discriminator d = mixed_discriminator_2q();
  const ComplexMatrix m = povm_element(d, random_gamma(d, 5));
  const DensityMatrix rho = random_mixed_state(2, 4, 6);
  const double exact = expectation(m, rho, 0, nullptr);
  Rng a(7);
  Rng b(7);
  const double ea = expectation(m, rho, 4000, &a);
  EXPECT_EQ(ea, expectation(m, rho, 4000, &b));
  const double sd = std::sqrt(exact * (1 - exact) / 4000);
  EXPECT_NEAR(ea, exact, 5 * sd + 1e-12);
  EXPECT_THROW(expectation(m, rho, 10, nullptr), InvalidArgument);
}

TEST(Expectation, OutOfRangeIsNumericalError) {
  const ComplexMatrix m = 2.0 * ComplexMatrix::Identity(2, 2);
  EXPECT_THROW(expectation(m, DensityMatrix::basis(1, 0), 0, nullptr), NumericalError);
}

TEST(Discriminator, LocalRegisterMatchesFullPovm) {
  const Discriminator d = pure_discriminator_5q();
  const DiscriminatorModel model(d);
  EXPECT_EQ(model.active_qubits(), (std::vector<std::size_t>{1, 4}));
  const ParamVector gamma = random_gamma(d, 8);
  const DensityMatrix rho = random_mixed_state(5, 4, 9);
  const double full = trace_product_real(model.povm(gamma.span()), rho.matrix());
  const double local = trace_product_real(model.local_povm(gamma.span()), model.reduce(rho));
  EXPECT_NEAR(full, local, 1e-13);
}

TEST(Discriminator, GradientMatchesFiniteDifferences) {
  const Discriminator d = deep_discriminator_2q();
  const DiscriminatorModel model(d);
  const ComplexMatrix rho = random_mixed_state(2, 4, 10).matrix();
  const ComplexMatrix sigma = random_mixed_state(2, 4, 11).matrix();
  Rng rng(12);
  std::vector<double> gamma = rng.angles(model.num_params());
  const auto grad = model.gradient(gamma, rho, sigma);
  auto f = [&](const std::vector<double> &g) {
    const ComplexMatrix m = model.local_povm(g);
    return trace_product_real(m, rho) - trace_product_real(m, sigma);
  };
  for (std::size_t i = 0; i < gamma.size(); ++i) {
    auto up = gamma;
    auto dn = gamma;
    up[i] += 1e-5;
    dn[i] -= 1e-5;
    EXPECT_NEAR(grad[i], (f(up) - f(dn)) / 2e-5, 1e-8);
  }
}

TEST(Config, ValidationRejectsBadValues) {
  GameConfig c;
  EXPECT_NO_THROW(c.validate());
  c.iterations = 0;
  EXPECT_THROW(c.validate(), ConfigError);
  c = GameConfig{};
  c.epsilon = 0.0;
  EXPECT_THROW(c.validate(), ConfigError);
  c = GameConfig{};
  c.lr_final_fraction = 0.0;
  EXPECT_THROW(c.validate(), ConfigError);
  EXPECT_THROW(optimizer_from_string("sgd2"), ConfigError);
  EXPECT_EQ(schedule_from_string("cosine"), Schedule::Cosine);
}

TEST(Config, CosineScheduleEndpoints) {
  GameConfig c;
  c.iterations = 100;
  c.lr_final_fraction = 0.01;
  EXPECT_NEAR(schedule_factor(c, 1), 1.0, 1e-15);
  EXPECT_NEAR(schedule_factor(c, 100), 0.01, 1e-15);
  EXPECT_GT(schedule_factor(c, 40), schedule_factor(c, 60));
  c.schedule = Schedule::Inverse;
  c.lr_decay = 0.5;
  EXPECT_NEAR(schedule_factor(c, 3), 0.5, 1e-15);
}

TEST(Verdict, NeedsWholeWindowInBand) {
  GameConfig c;
  c.window = 3;
  c.epsilon = 0.02;
  std::vector<IterationRecord> recs(5);
  const double losses[] = {0.3, 0.49, 0.51, 0.505, 0.499};
  for (std::size_t i = 0; i < 5; ++i) {
    recs[i].t = i + 1;
    recs[i].loss = losses[i];
  }
  Verdict v = verdict_from_records(recs, c);
  EXPECT_EQ(v.label, Label::Separable);
  EXPECT_NEAR(v.gap, 0.001, 1e-12);
  recs[2].loss = 0.53;
  EXPECT_EQ(verdict_from_records(recs, c).label, Label::Entangled);
  recs.resize(2);
  EXPECT_EQ(verdict_from_records(recs, c).label, Label::Entangled);
}

TEST(Bound, ClosedForm) {
  EXPECT_NEAR(convergence_bound(2, 8), 1.5, 1e-15);
  EXPECT_NEAR(convergence_bound(5, 45), 1.0, 1e-15);
}

TEST(Train, FrozenGeneratorAtInputStaysAtOneHalf) {
  const MixtureGenerator gen(mixture_generator_2q());
  const DiscriminatorModel disc(deep_discriminator_2q());
  Rng rng(13);
  const std::vector<double> theta = rng.angles(gen.num_params());
  const DensityMatrix rho = gen.state(theta);
  GameConfig c;
  c.iterations = 30;
  c.freeze_generator = true;
  const GameTrace t = train(rho, gen, disc, c, TrainInit{theta, std::nullopt});
  for (const auto &r : t.records) {
    EXPECT_NEAR(r.loss, 0.5, 1e-12);
  }
  EXPECT_EQ(t.verdict.label, Label::Separable);
}

TEST(Train, IsDeterministicPerSeed) {
  const MixtureGenerator gen(mixture_generator_2q());
  const DiscriminatorModel disc(deep_discriminator_2q());
  const DensityMatrix rho = build_rho_e(NoiseParam(0.9));
  GameConfig c;
  c.iterations = 20;
  c.seed = 99;
  const GameTrace a = train(rho, gen, disc, c);
  const GameTrace b = train(rho, gen, disc, c);
  ASSERT_EQ(a.records.size(), b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    EXPECT_EQ(a.records[i].loss, b.records[i].loss);
    EXPECT_EQ(a.records[i].theta, b.records[i].theta);
  }
}

TEST(Train, RejectsDimensionMismatch) {
  const MixtureGenerator gen(mixture_generator_2q());
  const DiscriminatorModel disc(deep_discriminator_2q());
  EXPECT_THROW(train(DensityMatrix::maximally_mixed(3), gen, disc, GameConfig{}), DimensionError);
}

TEST(Train, ShotModeRunsAndStaysInRange) {
  const MixtureGenerator gen(mixture_generator_2q());
  const DiscriminatorModel disc(deep_discriminator_2q());
  GameConfig c;
  c.iterations = 10;
  c.shots = 256;
  const GameTrace t = train(build_rho_e(NoiseParam(0.8)), gen, disc, c);
  for (const auto &r : t.records) {
    EXPECT_GE(r.loss, 0.0);
    EXPECT_LE(r.loss, 1.0);
  }
}

TEST(Detect, SeparableAndEntangledTwoQubitStates) {
  const MixtureGenerator gen(mixture_generator_2q());
  const DiscriminatorModel disc(deep_discriminator_2q());
  GameConfig c;
  const DetectionResult s = detect(build_rho_e(NoiseParam(0.2)), gen, disc, c);
  EXPECT_EQ(s.verdict.label, Label::Separable);
  const DetectionResult e = detect(build_rho_e(NoiseParam(1.0)), gen, disc, c);
  EXPECT_EQ(e.verdict.label, Label::Entangled);
  EXPECT_EQ(e.runs.size(), 3u);
  EXPECT_EQ(e.separable_runs, 0u);
}

TEST(Detect, BoundMonitorOnSeparableRun) {
  const MixtureGenerator gen(mixture_generator_2q());
  const DiscriminatorModel disc(deep_discriminator_2q());
  const DetectionResult s = detect(build_rho_s(NoiseParam(0.8)), gen, disc, GameConfig{});
  const BoundReport r = convergence_bound_monitor(s.runs[s.selected], 2);
  EXPECT_TRUE(r.applicable);
  EXPECT_TRUE(r.all_satisfied);
}

} // namespace
} // namespace qadv
