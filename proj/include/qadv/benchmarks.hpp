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

// Benchmark input states. Polarization convention: |H> = |0>, |V> = |1>.

#include <cstddef>

#include "qadv/channels.hpp"
#include "qadv/state.hpp"

namespace qadv {

/// (|0...0> + |1...1>) / sqrt(2)
PureState ghz_state(std::size_t num_qubits);

/// (|HH> + |VH>) / sqrt(2), a product state |+>|H>.
PureState psi_s();

/// (|HV> + |VH>) / sqrt(2)
PureState psi_e();

/// |psi_S><psi_S| - (1 - p)(|H><V| + |V><H|) (x) |H><H|, taken literally.
DensityMatrix build_rho_s(NoiseParam p);

/// p |psi_E><psi_E| + (1 - p)(|HH><HH| + |VV><VV|) / 2
DensityMatrix build_rho_e(NoiseParam p);

struct PureBenchmarks {
  DensityMatrix rho_g23; ///< |G2><G2| (x) |G3><G3|, separable across {0,1}:{2,3,4}
  DensityMatrix rho_g5;  ///< |G5><G5|
};

PureBenchmarks build_pure_benchmarks();

} // namespace qadv
