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
#include "qadv/random.hpp"

#include <cmath>
#include <numbers>

namespace qadv {

std::uint64_t Rng::derive(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  double u1 = uniform();
  while (u1 <= 0.0) {
    u1 = uniform();
  }
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double Rng::angle() {
  return 2.0 * std::numbers::pi * uniform();
}

std::vector<double> Rng::angles(std::size_t n) {
  std::vector<double> out(n);
  for (auto &a : out) {
    a = angle();
  }
  return out;
}

double Rng::bernoulli_mean(double p, std::uint64_t shots) {
  std::uint64_t hits = 0;
  for (std::uint64_t i = 0; i < shots; ++i) {
    hits += uniform() < p ? 1 : 0;
  }
  return static_cast<double>(hits) / static_cast<double>(shots);
}

} // namespace qadv
