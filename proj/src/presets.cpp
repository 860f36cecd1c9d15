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
#include "qadv/presets.hpp"

#include <charconv>

#include "qadv/errors.hpp"

namespace qadv {

namespace {

AngleSlot p(const std::string &name) { return AngleSlot::param(name); }

void u3_named(ParamCircuit &c, std::size_t q, const std::string &prefix) {
  c.u3(q, p(prefix + "t"), p(prefix + "p"), p(prefix + "l"));
}

void u3_layer(ParamCircuit &c, const std::vector<std::size_t> &qubits, std::size_t layer) {
  for (auto q : qubits) {
    u3_named(c, q, "u" + std::to_string(layer) + "_" + std::to_string(q) + "_");
  }
}

/// RZ RY RZ on each qubit of `qubits`.
void euler_block(ParamCircuit &c, const std::vector<std::size_t> &qubits, std::size_t &counter) {
  for (auto q : qubits) {
    c.rz(q, p("g" + std::to_string(counter++)));
    c.ry(q, p("g" + std::to_string(counter++)));
    c.rz(q, p("g" + std::to_string(counter++)));
  }
}

Discriminator two_block_discriminator(std::size_t num_qubits, std::size_t a, std::size_t b) {
  ParamCircuit c(num_qubits);
  std::size_t counter = 0;
  euler_block(c, {a, b}, counter);
  c.cz(a, b);
  euler_block(c, {a, b}, counter);
  return {std::move(c), b};
}

GeneratorSpec product_branch() {
  ParamCircuit c(2);
  u3_layer(c, {0, 1}, 0);
  return GeneratorSpec{std::move(c), Bipartition::contiguous(1, 2), {}, std::nullopt};
}

} // namespace

GeneratorSpec pure_generator_5q() {
  ParamCircuit c(5);
  const std::vector<std::size_t> all{0, 1, 2, 3, 4};
  u3_layer(c, all, 0);
  c.cz(0, 1);
  c.cz(2, 3);
  u3_layer(c, all, 1);
  c.cu3(3, 4, p("c0"), p("c1"), p("c2"));
  c.cu3(2, 4, p("c3"), p("c4"), p("c5"));
  u3_layer(c, all, 2);
  return GeneratorSpec{std::move(c), Bipartition::make({0, 1}, {2, 3, 4}, 5), {}, std::nullopt};
}

Discriminator pure_discriminator_5q() { return two_block_discriminator(5, 1, 4); }

GeneratorSpec mixed_generator_2q(double noise) {
  ParamCircuit c(3);
  u3_layer(c, {0, 1, 2}, 0);
  u3_layer(c, {0, 1, 2}, 1);
  return GeneratorSpec{std::move(c), Bipartition::contiguous(1, 2), {{2, Side::A}},
                       dephasing_generator_channel(NoiseParam(noise), 0)};
}

Discriminator mixed_discriminator_2q() { return two_block_discriminator(2, 0, 1); }

MixtureGeneratorSpec mixture_generator_2q() {
  ParamCircuit selector(2);
  selector.ry(0, p("a"));
  selector.ry(1, p("c"));
  selector.cu3(0, 1, p("b"), AngleSlot::fixed(0.0), AngleSlot::fixed(0.0));
  std::vector<GeneratorSpec> branches;
  for (int k = 0; k < 4; ++k) {
    branches.push_back(product_branch());
  }
  return MixtureGeneratorSpec{std::move(selector), std::move(branches)};
}

Discriminator deep_discriminator_2q() {
  ParamCircuit c(2);
  for (std::size_t layer = 0; layer < 4; ++layer) {
    if (layer > 0) {
      c.cz(0, 1);
    }
    u3_layer(c, {0, 1}, layer);
  }
  return {std::move(c), 1};
}

ParamCircuit ghz_preparation(std::size_t num_qubits) {
  ParamCircuit c(num_qubits);
  c.h(0);
  for (std::size_t q = 1; q < num_qubits; ++q) {
    c.cnot(q - 1, q);
  }
  return c;
}

ParamCircuit psi_s_preparation() {
  ParamCircuit c(2);
  c.h(0);
  return c;
}

ParamCircuit psi_e_preparation() {
  ParamCircuit c(2);
  c.h(0);
  c.cnot(0, 1);
  c.x(1);
  return c;
}

Preset preset_ansatz(std::string_view name) {
  if (name == "pure_generator_5q") {
    return pure_generator_5q();
  }
  if (name == "pure_discriminator_5q") {
    return pure_discriminator_5q();
  }
  if (name == "mixed_generator_2q") {
    return mixed_generator_2q();
  }
  if (name == "mixed_discriminator_2q") {
    return mixed_discriminator_2q();
  }
  if (name == "mixture_generator_2q") {
    return mixture_generator_2q();
  }
  if (name == "deep_discriminator_2q") {
    return deep_discriminator_2q();
  }
  if (name == "psi_s_preparation") {
    return psi_s_preparation();
  }
  if (name == "psi_e_preparation") {
    return psi_e_preparation();
  }
  constexpr std::string_view ghz = "ghz_preparation(";
  if (name.starts_with(ghz) && name.ends_with(")")) {
    const auto digits = name.substr(ghz.size(), name.size() - ghz.size() - 1);
    std::size_t n = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
    if (ec == std::errc{} && ptr == digits.data() + digits.size() && n > 0 &&
        n <= kDefaultMaxQubits) {
      return ghz_preparation(n);
    }
  }
  throw ConfigError("unknown preset '" + std::string(name) + "'");
}

std::vector<std::string> preset_names() {
  return {"pure_generator_5q",    "pure_discriminator_5q", "mixed_generator_2q",
          "mixed_discriminator_2q", "mixture_generator_2q", "deep_discriminator_2q",
          "ghz_preparation(N)",   "psi_s_preparation",     "psi_e_preparation"};
}

std::unique_ptr<Generator> make_generator(const Preset &preset) {
  if (const auto *g = std::get_if<GeneratorSpec>(&preset)) {
    return std::make_unique<CircuitGenerator>(*g);
  }
  if (const auto *m = std::get_if<MixtureGeneratorSpec>(&preset)) {
    return std::make_unique<MixtureGenerator>(*m);
  }
  throw ConfigError("preset is not a generator");
}

Discriminator as_discriminator(const Preset &preset) {
  if (const auto *d = std::get_if<Discriminator>(&preset)) {
    return *d;
  }
  throw ConfigError("preset is not a discriminator");
}

} // namespace qadv
