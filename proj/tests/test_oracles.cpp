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

#include <gtest/gtest.h>

#include "qadv/benchmarks.hpp"
#include "qadv/errors.hpp"
#include "qadv/oracles.hpp"
#include "qadv/presets.hpp"
#include "qadv/random.hpp"

namespace qadv {
namespace {

const Bipartition kCut = Bipartition::contiguous(1, 2);

TEST(Witness, ClosedFormsOnNoiseFamilies) {
  for (double p : {0.0, 0.25, 0.5, 0.8, 1.0}) {
    EXPECT_NEAR(witness_value(build_rho_e(NoiseParam(p))), p / 2, 1e-12) << p;
  }
  EXPECT_NEAR(witness_value(build_rho_s(NoiseParam(0.8))), 0.25, 1e-12);
  EXPECT_NEAR(witness_value(DensityMatrix::from_pure(ghz_state(3))), -0.5, 1e-12);
  EXPECT_THROW(WitnessOperator(3).value(DensityMatrix::maximally_mixed(2)), DimensionError);
}

TEST(Witness, SweepRows) {
  const auto rows = witness_sweep(StateFamily::RhoE, {0.8, 1.0});
  EXPECT_NEAR(rows[0].value, 0.40, 1e-9);
  EXPECT_NEAR(rows[1].value, 0.50, 1e-9);
  EXPECT_THROW(witness_sweep(StateFamily::RhoE, {1.2}), InvalidArgument);
  EXPECT_EQ(state_family_from_string("rho_s"), StateFamily::RhoS);
}

TEST(Ppt, NoisyFamilyMinimumEigenvalue) {
  // The coherence block [[(1-p)/2, p/2], [p/2, (1-p)/2]] after partial
  // transposition gives min eigenvalue (1 - 2p)/2 for p > 1/3.
  for (double p : {0.5, 0.6, 0.8, 1.0}) {
    const PptResult r = ppt_verdict(build_rho_e(NoiseParam(p)), kCut);
    EXPECT_NEAR(r.min_eigenvalue, (1 - 2 * p) / 2, 1e-12) << p;
    EXPECT_TRUE(r.exact);
  }
  EXPECT_EQ(ppt_verdict(build_rho_e(NoiseParam(0.8)), kCut).label, PptLabel::Entangled);
  EXPECT_EQ(ppt_verdict(build_rho_e(NoiseParam(0.4)), kCut).label, PptLabel::Ppt);
  EXPECT_EQ(ppt_verdict(build_rho_s(NoiseParam(0.8)), kCut).label, PptLabel::Ppt);
}

TEST(Ppt, PureBenchmarksAcrossFiveQubitCut) {
  const auto cut = Bipartition::make({0, 1}, {2, 3, 4}, 5);
  const PureBenchmarks pb = build_pure_benchmarks();
  EXPECT_EQ(ppt_verdict(pb.rho_g23, cut).label, PptLabel::Ppt);
  const PptResult g5 = ppt_verdict(pb.rho_g5, cut);
  EXPECT_EQ(g5.label, PptLabel::Entangled);
  EXPECT_NEAR(g5.min_eigenvalue, -0.5, 1e-12);
  EXPECT_FALSE(g5.exact);
}

TEST(RandomStates, AreValidAndSeeded) {
  for (std::size_t rank = 1; rank <= 4; ++rank) {
    const DensityMatrix a = random_mixed_state(2, rank, 5);
    const DensityMatrix b = random_mixed_state(2, rank, 5);
    EXPECT_EQ((a.matrix() - b.matrix()).cwiseAbs().maxCoeff(), 0.0);
    const auto e = eig_hermitian(a.matrix());
    EXPECT_GE(e.values.minCoeff(), -1e-12);
    EXPECT_NEAR(a.matrix().trace().real(), 1.0, 1e-12);
    std::size_t nonzero = 0;
    for (Eigen::Index i = 0; i < e.values.size(); ++i) {
      nonzero += e.values(i) > 1e-10;
    }
    EXPECT_EQ(nonzero, rank);
  }
  EXPECT_GT((random_mixed_state(2, 4, 1).matrix() - random_mixed_state(2, 4, 2).matrix())
                .cwiseAbs()
                .maxCoeff(),
            1e-3);
}

TEST(RandomStates, ProductStatesArePpt) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    EXPECT_GE(ppt_verdict(random_product_state(1, 1, s), kCut).min_eigenvalue, -1e-12);
  }
}

TEST(RandomStates, GinibreEntanglementFractionIsPlausible) {
  // Roughly a quarter of full-rank two-qubit Hilbert-Schmidt states are PPT.
  std::size_t ppt = 0;
  const std::size_t n = 400;
  for (std::uint64_t s = 0; s < n; ++s) {
    ppt += ppt_verdict(random_mixed_state(2, 4, s), kCut).label == PptLabel::Ppt;
  }
  const double frac = static_cast<double>(ppt) / n;
  EXPECT_GT(frac, 0.15);
  EXPECT_LT(frac, 0.40);
}

TEST(Confusion, ProductEnsembleIsAllSeparable) {
  const MixtureGenerator gen(mixture_generator_2q());
  const DiscriminatorModel disc(deep_discriminator_2q());
  ConfusionOptions o;
  o.samples = 8;
  o.ensemble = Ensemble::Product;
  o.threads = 1;
  o.game.stop_on_separable = true;
  const ConfusionResult r = confusion_matrix(o, gen, disc);
  EXPECT_EQ(r.tn, 8u);
  EXPECT_DOUBLE_EQ(r.accuracy, 1.0);
}

TEST(Confusion, ThreadCountDoesNotChangeResults) {
  const MixtureGenerator gen(mixture_generator_2q());
  const DiscriminatorModel disc(deep_discriminator_2q());
  ConfusionOptions o;
  o.samples = 4;
  o.game.iterations = 60;
  o.game.restarts = 1;
  o.threads = 1;
  const ConfusionResult a = confusion_matrix(o, gen, disc);
  o.threads = 3;
  const ConfusionResult b = confusion_matrix(o, gen, disc);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(a.samples[i].final_loss, b.samples[i].final_loss);
    EXPECT_EQ(a.samples[i].predicted, b.samples[i].predicted);
  }
}

} // namespace
} // namespace qadv
