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

#include "qadv/circuit.hpp"
#include "qadv/errors.hpp"
#include "qadv/game.hpp"
#include "qadv/gates.hpp"
#include "qadv/kernels.hpp"
#include "qadv/oracles.hpp"
#include "qadv/presets.hpp"
#include "qadv/random.hpp"
#include "qadv/serialization.hpp"

namespace qadv {
namespace {

constexpr double kPi = std::numbers::pi;

double max_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
  return (a - b).cwiseAbs().maxCoeff();
}

ParamCircuit mixed_circuit() {
  ParamCircuit c(3);
  c.u3(0, AngleSlot::param("a"), AngleSlot::param("b"), AngleSlot::param("c"));
  c.h(1);
  c.cu3(1, 2, AngleSlot::param("d"), AngleSlot::param("e"), AngleSlot::param("f"));
  c.cz(0, 2);
  c.rx(1, AngleSlot::param("a"));
  c.cnot(2, 0);
  c.ry(2, AngleSlot::fixed(0.7));
  c.cu3(0, 1, AngleSlot::param("g"), AngleSlot::fixed(0.2), AngleSlot::param("h"));
  c.rz(0, AngleSlot::param("i"));
  c.x(1);
  return c;
}

TEST(Gates, U3MatchesDefinition) {
  const double t = 0.4, p = 1.1, l = -0.6;
  const ComplexMatrix u = gates::u3(t, p, l);
  const Complex i(0, 1);
  EXPECT_NEAR(std::abs(u(0, 0) - std::cos(t / 2)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(u(0, 1) + std::exp(i * l) * std::sin(t / 2)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(u(1, 0) - std::exp(i * p) * std::sin(t / 2)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(u(1, 1) - std::exp(i * (p + l)) * std::cos(t / 2)), 0.0, 1e-15);
}

TEST(Gates, U3IsEulerProductUpToPhase) {
  const double t = 0.9, p = -0.3, l = 2.2;
  const ComplexMatrix euler = std::exp(Complex(0, (p + l) / 2)) * gates::rz(p) * gates::ry(t) *
                              gates::rz(l);
  EXPECT_LT(max_diff(euler, gates::u3(t, p, l)), 1e-14);
}

TEST(Gates, RotationsAreUnitary) {
  for (const auto &m : {gates::rx(0.3), gates::ry(-1.2), gates::rz(2.5), gates::u3(1, 2, 3),
                        gates::hadamard(), gates::cz(), gates::cnot()}) {
    EXPECT_LT(max_diff(m * m.adjoint(), ComplexMatrix::Identity(m.rows(), m.cols())), 1e-14);
  }
}

TEST(Gates, ControlledIsBlockDiagonal) {
  const ComplexMatrix u = gates::u3(0.5, 0.1, 0.9);
  const Gate g = make_gate(GateKind::CU3, {0, 1},
                           {AngleSlot::fixed(0.5), AngleSlot::fixed(0.1), AngleSlot::fixed(0.9)});
  const double angles[] = {0.5, 0.1, 0.9};
  const ComplexMatrix m = gate_matrix(g, angles);
  EXPECT_LT(max_diff(m.topLeftCorner(2, 2), ComplexMatrix::Identity(2, 2)), 1e-15);
  EXPECT_LT(max_diff(m.bottomRightCorner(2, 2), u), 1e-15);
  EXPECT_LT(m.topRightCorner(2, 2).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Gates, MakeGateValidates) {
  EXPECT_THROW(make_gate(GateKind::CZ, {1, 1}), InvalidArgument);
  EXPECT_THROW(make_gate(GateKind::RX, {0}), InvalidArgument);
  EXPECT_THROW(make_gate(GateKind::H, {0, 1}), InvalidArgument);
  EXPECT_THROW(gate_kind_from_string("SWAP"), InvalidArgument);
  EXPECT_EQ(gate_kind_from_string("CU3"), GateKind::CU3);
}

TEST(Gates, UnboundParameterThrows) {
  const Gate g = make_gate(GateKind::RY, {0}, {AngleSlot::param("x")});
  EXPECT_THROW(gate_matrix(g, ParameterBinding{}), UnboundParameter);
}

TEST(Circuit, QubitZeroIsMostSignificant) {
  ParamCircuit c(2);
  c.x(0);
  const PureState out = apply_circuit_pure(c, ParamVector{}, PureState::zero(2));
  EXPECT_NEAR(std::abs(out.amplitudes()(0b10)), 1.0, 1e-15);
}

TEST(Circuit, CnotControlIsFirstQubit) {
  ParamCircuit c(2);
  c.x(1).cnot(1, 0);
  const PureState out = apply_circuit_pure(c, ParamVector{}, PureState::zero(2));
  EXPECT_NEAR(std::abs(out.amplitudes()(0b11)), 1.0, 1e-15);
}

TEST(Circuit, RejectsOutOfRangeQubit) {
  ParamCircuit c(2);
  EXPECT_THROW(c.h(2), InvalidArgument);
}

TEST(Circuit, ParameterOrderIsFirstAppearance) {
  const ParamCircuit c = mixed_circuit();
  EXPECT_EQ(c.parameter_names(),
            (std::vector<std::string>{"a", "b", "c", "d", "e", "f", "g", "h", "i"}));
  EXPECT_THROW(c.bind(ParamVector::zeros(3)), InvalidArgument);
  EXPECT_THROW(ParamVector({std::nan("")}), InvalidArgument);
}

TEST(Circuit, CompiledProgramMatchesDenseProduct) {
  const ParamCircuit c = mixed_circuit();
  const Program prog = Program::compile(c);
  Rng rng(3);
  for (int k = 0; k < 10; ++k) {
    const ParamVector params(rng.angles(c.num_params()));
    EXPECT_LT(max_diff(prog.unitary(params.span()), c.unitary(params)), 1e-12);
  }
}

TEST(Circuit, DensityAndPureAgree) {
  const ParamCircuit c = mixed_circuit();
  Rng rng(4);
  const ParamVector params(rng.angles(c.num_params()));
  const PureState psi = apply_circuit_pure(c, params, PureState::zero(3));
  const DensityMatrix rho = apply_circuit_density(c, params, DensityMatrix::basis(3, 0));
  const ComplexMatrix expect = psi.amplitudes() * psi.amplitudes().adjoint();
  EXPECT_LT(max_diff(rho.matrix(), expect), 1e-12);
}

TEST(Kernels, EmbedMatchesKron) {
  const ComplexMatrix u = gates::u3(0.2, 0.4, 0.8);
  const std::size_t q[] = {1};
  const ComplexMatrix expect = kron(kron(ComplexMatrix::Identity(2, 2), u),
                                    ComplexMatrix::Identity(2, 2));
  EXPECT_LT(max_diff(kernels::embed(u, q, 3), expect), 1e-15);
}

TEST(Kernels, ConjugateMatchesDense) {
  const DensityMatrix rho = random_mixed_state(3, 8, 21);
  const ComplexMatrix cu = gates::controlled(gates::u3(1.0, 0.5, -0.5));
  const std::size_t q[] = {2, 0};
  ComplexMatrix m = rho.matrix();
  kernels::conjugate(m, cu, q, 3);
  const ComplexMatrix e = kernels::embed(cu, q, 3);
  EXPECT_LT(max_diff(m, e * rho.matrix() * e.adjoint()), 1e-13);
}

TEST(ShiftRule, MatchesFiniteDifferences) {
  const ParamCircuit c = mixed_circuit();
  const Program prog = Program::compile(c);
  const DensityMatrix obs_state = random_mixed_state(3, 8, 5);
  const ComplexMatrix x = obs_state.matrix();
  const ComplexMatrix p = DensityMatrix::basis(3, 0).matrix();
  auto f = [&](std::span<const double> params, const AngleShift *s) {
    ComplexMatrix m = p;
    prog.conjugate(m, params, s);
    return trace_product_real(x, m);
  };
  Rng rng(8);
  for (int k = 0; k < 5; ++k) {
    std::vector<double> params = rng.angles(c.num_params());
    const auto grad = shift_rule_gradient(prog, params, f);
    for (std::size_t i = 0; i < params.size(); ++i) {
      const double h = 1e-5;
      auto up = params;
      auto dn = params;
      up[i] += h;
      dn[i] -= h;
      const double fd = (f(up, nullptr) - f(dn, nullptr)) / (2 * h);
      EXPECT_NEAR(grad[i], fd, 1e-8) << "parameter " << i;
    }
  }
}

TEST(ShiftRule, PairsMatchExplicitShifts) {
  const ParamCircuit c = mixed_circuit();
  const Program prog = Program::compile(c);
  const ComplexMatrix x = random_mixed_state(3, 8, 6).matrix();
  const ComplexMatrix p = random_mixed_state(3, 2, 7).matrix();
  Rng rng(9);
  const std::vector<double> params = rng.angles(c.num_params());
  const auto pairs = prog.shift_pairs(params, p, x);
  ASSERT_EQ(pairs.size(), prog.shift_terms().size());
  for (std::size_t s = 0; s < pairs.size(); ++s) {
    for (const double delta : {kPi / 2, -kPi / 2}) {
      ComplexMatrix m = p;
      const AngleShift shift{s, delta};
      prog.conjugate(m, params, &shift);
      const double expect = trace_product_real(x, m);
      EXPECT_NEAR(delta > 0 ? pairs[s].plus : pairs[s].minus, expect, 1e-12);
    }
  }
}

TEST(ShiftRule, SingleParameterFormRejectsUnsupportedGates) {
  const ParamCircuit c = mixed_circuit();
  auto f = [](const ParamVector &) { return 0.0; };
  const ParamVector params = ParamVector::zeros(c.num_params());
  // "a" feeds two gates, "d" feeds a controlled rotation.
  EXPECT_THROW(grad_parameter_shift(c, f, params, 0), ShiftRuleError);
  EXPECT_THROW(grad_parameter_shift(c, f, params, 3), ShiftRuleError);
  EXPECT_NO_THROW(grad_parameter_shift(c, f, params, 8));
}

TEST(ShiftRule, SingleParameterFormIsExactForRotations) {
  ParamCircuit c(1);
  c.ry(0, AngleSlot::param("t"));
  auto f = [&](const ParamVector &v) {
    return apply_circuit_density(c, v, DensityMatrix::basis(1, 0))(0, 0).real();
  };
  // <0|RY(t)|0><0|RY(t)^dagger|0> = cos^2(t/2), derivative -sin(t)/2.
  const ParamVector at({0.7});
  EXPECT_NEAR(grad_parameter_shift(c, f, at, 0), -std::sin(0.7) / 2, 1e-14);
}

TEST(Serialization, CircuitRoundTrip) {
  const ParamCircuit c = mixed_circuit();
  const Json j = to_json(c);
  const ParamCircuit back = circuit_from_json(Json::parse(j.dump()), c.num_qubits());
  EXPECT_EQ(back.parameter_names(), c.parameter_names());
  Rng rng(10);
  const ParamVector params(rng.angles(c.num_params()));
  EXPECT_LT(max_diff(back.unitary(params), c.unitary(params)), 1e-15);
}

TEST(Serialization, CircuitErrors) {
  EXPECT_THROW(circuit_from_json(Json::parse(R"({"kind": "H"})")), ConfigError);
  EXPECT_THROW(circuit_from_json(Json::parse(R"([{"kind": "FOO", "qubits": [0]}])")),
               ConfigError);
  EXPECT_THROW(circuit_from_json(Json::parse(R"([{"kind": "RX", "qubits": [0]}])")),
               ConfigError);
  const ParamCircuit c =
      circuit_from_json(Json::parse(R"([{"kind": "RX", "qubits": [1], "params": ["t"]}])"));
  EXPECT_EQ(c.num_qubits(), 2u);
}

TEST(Presets, DiscriminatorPovmRegressionPin) {
  // Projector of the two-qubit discriminator at a fixed angle vector,
  // pinned against an independent dense construction.
  const Discriminator d = mixed_discriminator_2q();
  std::vector<double> gamma(d.circuit.num_params());
  for (std::size_t i = 0; i < gamma.size(); ++i) {
    gamma[i] = 0.1 * static_cast<double>(i + 1);
  }
  const ParamVector g(gamma);
  ComplexMatrix u = ComplexMatrix::Identity(4, 4);
  std::size_t k = 0;
  auto euler = [&](std::size_t q) {
    const double a = gamma[k], b = gamma[k + 1], c = gamma[k + 2];
    k += 3;
    const ComplexMatrix local = gates::rz(c) * gates::ry(b) * gates::rz(a);
    return q == 0 ? kron(local, ComplexMatrix::Identity(2, 2))
                  : kron(ComplexMatrix::Identity(2, 2), local);
  };
  u = euler(0) * u;
  u = euler(1) * u;
  u = gates::cz() * u;
  u = euler(0) * u;
  u = euler(1) * u;
  ComplexMatrix proj = ComplexMatrix::Zero(4, 4);
  proj(0, 0) = proj(2, 2) = 1.0;
  const ComplexMatrix expect = u * proj * u.adjoint();
  EXPECT_LT(max_diff(povm_element(d, g), expect), 1e-13);
  const ComplexMatrix m = povm_element(d, g);
  EXPECT_NEAR(m.trace().real(), 2.0, 1e-13);
  EXPECT_LT(max_diff(m * m, m), 1e-13);
}

struct GateCounts {
  std::size_t parameterized_single = 0;
  std::size_t cz = 0;
  std::size_t cu3 = 0;
  std::size_t other_multi = 0;
};

GateCounts count_gates(const ParamCircuit &c) {
  GateCounts n;
  for (const auto &g : c.gates()) {
    if (g.kind == GateKind::CZ) {
      ++n.cz;
    } else if (g.kind == GateKind::CU3) {
      ++n.cu3;
    } else if (g.is_multi_qubit()) {
      ++n.other_multi;
    } else if (g.is_parameterized()) {
      ++n.parameterized_single;
    }
  }
  return n;
}

TEST(Presets, GateBudgets) {
  const GateCounts pg = count_gates(pure_generator_5q().circuit);
  EXPECT_EQ(pg.parameterized_single, 15u);
  EXPECT_EQ(pg.cz, 2u);
  EXPECT_EQ(pg.other_multi, 0u);
  std::size_t controlled_angles = 0;
  for (const auto &g : pure_generator_5q().circuit.gates()) {
    if (g.kind == GateKind::CU3) {
      controlled_angles += g.angles.size();
    }
  }
  EXPECT_EQ(controlled_angles, 6u);

  for (const Discriminator &d : {pure_discriminator_5q(), mixed_discriminator_2q()}) {
    const GateCounts n = count_gates(d.circuit);
    EXPECT_EQ(n.parameterized_single, 12u);
    EXPECT_EQ(n.cz, 1u);
    EXPECT_EQ(n.cu3 + n.other_multi, 0u);
  }
  const GateCounts mg = count_gates(mixed_generator_2q().circuit);
  EXPECT_EQ(mg.parameterized_single, 6u);
  EXPECT_EQ(mg.cz + mg.cu3 + mg.other_multi, 0u);
}

TEST(Presets, GhzFivePreparationHasUnitFidelity) {
  const PureState g = apply_circuit_pure(ghz_preparation(5), ParamVector{}, PureState::zero(5));
  ComplexVector target = ComplexVector::Zero(32);
  target(0) = target(31) = 1 / std::sqrt(2.0);
  EXPECT_NEAR(std::norm(target.dot(g.amplitudes())), 1.0, 1e-9);
}

TEST(Presets, DiscriminatorUnitaryPreservesSpectrum) {
  const Discriminator d = mixed_discriminator_2q();
  Rng rng(31);
  const ParamVector gamma(rng.angles(d.circuit.num_params()));
  const DensityMatrix rho = random_mixed_state(2, 4, 32);
  const DensityMatrix out = apply_circuit_density(d.circuit, gamma, rho);
  const auto a = eig_hermitian(rho.matrix()).values;
  const auto b = eig_hermitian(out.matrix()).values;
  EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(Presets, NamesResolve) {
  for (const auto &name : preset_names()) {
    const std::string resolved =
        name == "ghz_preparation(N)" ? std::string("ghz_preparation(3)") : name;
    EXPECT_NO_THROW(preset_ansatz(resolved)) << resolved;
  }
  EXPECT_THROW(preset_ansatz("nope"), ConfigError);
  EXPECT_THROW(preset_ansatz("ghz_preparation(0)"), ConfigError);
}

TEST(Presets, PreparationCircuitsBuildTargets) {
  const PureState g = apply_circuit_pure(ghz_preparation(4), ParamVector{}, PureState::zero(4));
  EXPECT_NEAR(g.amplitudes()(0).real(), 1 / std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(g.amplitudes()(15).real(), 1 / std::sqrt(2.0), 1e-14);
  const PureState e = apply_circuit_pure(psi_e_preparation(), ParamVector{}, PureState::zero(2));
  EXPECT_NEAR(e.amplitudes()(0b01).real(), 1 / std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(e.amplitudes()(0b10).real(), 1 / std::sqrt(2.0), 1e-14);
}

} // namespace
} // namespace qadv
