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
#include <numeric>

#include <gtest/gtest.h>

#include "qadv/benchmarks.hpp"
#include "qadv/channels.hpp"
#include "qadv/errors.hpp"
#include "qadv/generator.hpp"
#include "qadv/oracles.hpp"
#include "qadv/presets.hpp"
#include "qadv/random.hpp"

namespace qadv {
namespace {

double max_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
  return (a - b).cwiseAbs().maxCoeff();
}

TEST(Channels, RejectsNonTracePreserving) {
  EXPECT_THROW(KrausChannel({ComplexMatrix::Identity(2, 2) * 0.5}, {0}), ChannelError);
  EXPECT_THROW(NoiseParam(1.5), InvalidArgument);
  EXPECT_THROW(NoiseParam(-0.1), InvalidArgument);
}

TEST(Channels, FullDepolarizingGivesMaximallyMixed) {
  const DensityMatrix out = apply_kraus(depolarizing_channel(NoiseParam(1.0), 0),
                                        DensityMatrix::basis(1, 0));
  EXPECT_LT(max_diff(out.matrix(), DensityMatrix::maximally_mixed(1).matrix()), 1e-15);
}

TEST(Channels, DephasingScalesCoherence) {
  const DensityMatrix plus = DensityMatrix::from_pure(psi_s());
  const double p = 0.8;
  const DensityMatrix out = apply_kraus(dephasing_generator_channel(NoiseParam(p), 0), plus);
  EXPECT_NEAR(out(0b00, 0b10).real(), 0.5 * (2 * p - 1), 1e-15);
  EXPECT_NEAR(out(0b00, 0b00).real(), 0.5, 1e-15);
}

TEST(Channels, ChannelOnPsiEReproducesNoisyFamily) {
  for (double p : {0.0, 0.3, 0.8, 1.0}) {
    const DensityMatrix out =
        apply_kraus(rho_e_channel(NoiseParam(p), 0, 1), DensityMatrix::from_pure(psi_e()));
    EXPECT_LT(max_diff(out.matrix(), build_rho_e(NoiseParam(p)).matrix()), 1e-14) << p;
  }
}

TEST(Channels, ChannelOnLaterQubitsMatchesEmbedding) {
  const DensityMatrix rho = random_mixed_state(3, 8, 17);
  const DensityMatrix a = apply_kraus(depolarizing_channel(NoiseParam(0.4), 2), rho);
  // Depolarizing qubit 2 leaves the marginal of qubits 0, 1 untouched.
  EXPECT_LT(max_diff(partial_trace(a, {2}).matrix(), partial_trace(rho, {2}).matrix()), 1e-14);
}

TEST(Benchmarks, ClosedFormEntries) {
  const DensityMatrix e = build_rho_e(NoiseParam(0.8));
  EXPECT_NEAR(e(0b01, 0b10).real(), 0.4, 1e-15);
  EXPECT_NEAR(e(0b00, 0b00).real(), 0.1, 1e-15);
  EXPECT_NEAR(e(0b01, 0b01).real(), 0.4, 1e-15);
  const DensityMatrix s = build_rho_s(NoiseParam(0.8));
  EXPECT_NEAR(s(0b00, 0b10).real(), 0.3, 1e-15);
  EXPECT_NEAR(s(0b00, 0b00).real(), 0.5, 1e-15);
  const PureBenchmarks pb = build_pure_benchmarks();
  EXPECT_EQ(pb.rho_g23.num_qubits(), 5u);
  EXPECT_NEAR(pb.rho_g5(0, 31).real(), 0.5, 1e-15);
  EXPECT_NEAR(pb.rho_g23(0b00000, 0b11111).real(), 0.25, 1e-15);
}

TEST(Separability, RejectsCutCrossingGateWithIndex) {
  ParamCircuit c(2);
  c.ry(0, AngleSlot::param("a"));
  c.ry(1, AngleSlot::param("b"));
  c.cz(0, 1);
  const GeneratorSpec spec{c, Bipartition::contiguous(1, 2), {}, std::nullopt};
  const SeparabilityReport r = validate_separability(spec);
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.offending_gates, (std::vector<std::size_t>{2}));
  try {
    CircuitGenerator g(spec);
    FAIL() << "expected SeparabilityViolation";
  } catch (const SeparabilityViolation &e) {
    EXPECT_NE(std::string(e.what()).find("index 2"), std::string::npos) << e.what();
  }
}

TEST(Separability, AncillaSideDecidesLegality) {
  ParamCircuit c(3);
  c.cnot(2, 0);
  const GeneratorSpec on_a{c, Bipartition::contiguous(1, 2), {{2, Side::A}}, std::nullopt};
  EXPECT_TRUE(validate_separability(on_a).ok());
  const GeneratorSpec on_b{c, Bipartition::contiguous(1, 2), {{2, Side::B}}, std::nullopt};
  EXPECT_FALSE(validate_separability(on_b).ok());
  const GeneratorSpec missing{c, Bipartition::contiguous(1, 2), {}, std::nullopt};
  EXPECT_THROW(validate_separability(missing), InvalidArgument);
}

TEST(Separability, ChannelAcrossCutIsRejected) {
  ParamCircuit c(2);
  const GeneratorSpec spec{c, Bipartition::contiguous(1, 2), {},
                           rho_e_channel(NoiseParam(0.5), 0, 1)};
  const auto r = validate_separability(spec);
  EXPECT_TRUE(r.channel_spans_cut);
  EXPECT_FALSE(r.ok());
}

TEST(Separability, MixtureChecksBranchCount) {
  MixtureGeneratorSpec m = mixture_generator_2q();
  m.branches.pop_back();
  EXPECT_THROW(validate_separability(m), InvalidArgument);
  EXPECT_THROW(MixtureGenerator{m}, InvalidArgument);
}

TEST(Generators, MixedPresetAtZeroAnglesIsValidAndPpt) {
  const GeneratorSpec spec = mixed_generator_2q(0.8);
  const DensityMatrix s = generate_state(spec, ParamVector::zeros(spec.circuit.num_params()));
  EXPECT_EQ(s.num_qubits(), 2u);
  EXPECT_GE(ppt_verdict(s, spec.cut).min_eigenvalue, -1e-9);
}

TEST(Generators, CircuitGeneratorMatchesGenerateState) {
  const GeneratorSpec spec = mixed_generator_2q(0.8);
  const CircuitGenerator g(spec);
  Rng rng(1);
  const ParamVector params(rng.angles(g.num_params()));
  EXPECT_LT(max_diff(g.state(params.span()).matrix(), generate_state(spec, params).matrix()),
            1e-14);
}

TEST(Generators, MixtureIsWeightedSumOfBranches) {
  const MixtureGeneratorSpec spec = mixture_generator_2q();
  const MixtureGenerator g(spec);
  Rng rng(2);
  const std::vector<double> params = rng.angles(g.num_params());
  const auto w = g.weights(params);
  ASSERT_EQ(w.size(), 4u);
  EXPECT_NEAR(std::accumulate(w.begin(), w.end(), 0.0), 1.0, 1e-14);
  const std::size_t ns = spec.selector.num_params();
  const std::size_t nb = spec.branches[0].circuit.num_params();
  ComplexMatrix expect = ComplexMatrix::Zero(4, 4);
  for (std::size_t k = 0; k < 4; ++k) {
    const std::vector<double> bp(params.begin() + static_cast<long>(ns + k * nb),
                                 params.begin() + static_cast<long>(ns + (k + 1) * nb));
    expect += w[k] * generate_state(spec.branches[k], ParamVector(bp)).matrix();
  }
  EXPECT_LT(max_diff(g.state(params).matrix(), expect), 1e-14);
}

void check_gradient(const Generator &g, std::uint64_t seed) {
  const std::size_t n = g.num_qubits();
  const ComplexMatrix m = random_mixed_state(n, dimension_of(n), seed).matrix();
  Rng rng(seed);
  std::vector<double> params = rng.angles(g.num_params());
  const auto grad = g.expectation_gradient(m, params);
  ASSERT_EQ(grad.size(), params.size());
  for (std::size_t i = 0; i < params.size(); ++i) {
    const double h = 1e-5;
    auto up = params;
    auto dn = params;
    up[i] += h;
    dn[i] -= h;
    const double fd = (g.expectation(m, up) - g.expectation(m, dn)) / (2 * h);
    EXPECT_NEAR(grad[i], fd, 1e-8) << g.parameter_names()[i];
  }
}

TEST(Generators, GradientsMatchFiniteDifferences) {
  check_gradient(CircuitGenerator(pure_generator_5q()), 3);
  check_gradient(CircuitGenerator(mixed_generator_2q(0.8)), 4);
  check_gradient(MixtureGenerator(mixture_generator_2q()), 5);
}

TEST(Generators, ExpectationMatchesState) {
  const MixtureGenerator g(mixture_generator_2q());
  Rng rng(6);
  const auto params = rng.angles(g.num_params());
  const ComplexMatrix m = random_mixed_state(2, 4, 7).matrix();
  EXPECT_NEAR(g.expectation(m, params), trace_product_real(m, g.state(params).matrix()), 1e-14);
}

TEST(Generators, RandomDrawsArePpt) {
  const CircuitGenerator mixed(mixed_generator_2q(0.8));
  const MixtureGenerator mix(mixture_generator_2q());
  const auto cut = Bipartition::contiguous(1, 2);
  Rng rng(12);
  for (int k = 0; k < 30; ++k) {
    EXPECT_GE(ppt_verdict(mixed.state(rng.angles(mixed.num_params())), cut).min_eigenvalue, -1e-9);
    EXPECT_GE(ppt_verdict(mix.state(rng.angles(mix.num_params())), cut).min_eigenvalue, -1e-9);
  }
}

TEST(Generators, PureGeneratorOutputIsProductAcrossCut) {
  const CircuitGenerator g(pure_generator_5q());
  Rng rng(13);
  const DensityMatrix s = g.state(rng.angles(g.num_params()));
  const DensityMatrix a = partial_trace(s, {2, 3, 4});
  const DensityMatrix b = partial_trace(s, {0, 1});
  EXPECT_LT(max_diff(tensor_product(a, b).matrix(), s.matrix()), 1e-12);
}

} // namespace
} // namespace qadv
