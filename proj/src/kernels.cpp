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
#include "qadv/kernels.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "qadv/errors.hpp"
#include "qadv/state.hpp"

namespace qadv::kernels {
namespace {

constexpr std::size_t kMaxLocalQubits = 4;
constexpr std::size_t kMaxLocalDim = std::size_t{1} << kMaxLocalQubits;

// Index layout shared by every kernel: `offsets[loc]` is the global index
// offset of local basis state `loc`; `bases` are the global indices whose
// target bits are all zero.
struct Layout {
  std::array<std::size_t, kMaxLocalDim> offsets{};
  std::size_t local_dim = 0;
  std::uint64_t target_mask = 0;
  std::size_t dim = 0;

  template <class F> void for_each_base(F &&f) const {
    for (std::size_t i = 0; i < dim; ++i) {
      if ((i & target_mask) == 0) {
        f(i);
      }
    }
  }
};

Layout make_layout(const ComplexMatrix &op, std::span<const std::size_t> qubits,
                   std::size_t num_qubits) {
  const std::size_t k = qubits.size();
  if (k == 0 || k > kMaxLocalQubits) {
    throw InvalidArgument("kernel: operator must act on 1.." + std::to_string(kMaxLocalQubits) +
                          " qubits");
  }
  Layout layout;
  layout.local_dim = std::size_t{1} << k;
  layout.dim = dimension_of(num_qubits);
  if (static_cast<std::size_t>(op.rows()) != layout.local_dim ||
      static_cast<std::size_t>(op.cols()) != layout.local_dim) {
    throw DimensionError("kernel: operator shape does not match its qubit count");
  }
  std::array<std::uint64_t, kMaxLocalQubits> masks{};
  for (std::size_t t = 0; t < k; ++t) {
    if (qubits[t] >= num_qubits) {
      throw InvalidArgument("kernel: qubit " + std::to_string(qubits[t]) + " out of range");
    }
    masks[t] = qubit_mask(qubits[t], num_qubits);
    if ((layout.target_mask & masks[t]) != 0) {
      throw InvalidArgument("kernel: repeated target qubit");
    }
    layout.target_mask |= masks[t];
  }
  for (std::size_t loc = 0; loc < layout.local_dim; ++loc) {
    std::size_t off = 0;
    for (std::size_t t = 0; t < k; ++t) {
      if ((loc >> (k - 1 - t)) & 1U) {
        off |= masks[t];
      }
    }
    layout.offsets[loc] = off;
  }
  return layout;
}

// x[base + offsets[.]] <- op * x[base + offsets[.]] with the given stride
// between consecutive logical elements.
inline void left_on_strided(Complex *x, std::size_t stride, const Layout &layout,
                            const ComplexMatrix &op) {
  const std::size_t d = layout.local_dim;
  if (d == 2) {
    const Complex a = op(0, 0), b = op(0, 1), c = op(1, 0), e = op(1, 1);
    const std::size_t off = layout.offsets[1] * stride;
    layout.for_each_base([&](std::size_t base) {
      Complex *p = x + base * stride;
      const Complex v0 = p[0];
      const Complex v1 = p[off];
      p[0] = a * v0 + b * v1;
      p[off] = c * v0 + e * v1;
    });
    return;
  }
  std::array<Complex, kMaxLocalDim> in{};
  layout.for_each_base([&](std::size_t base) {
    for (std::size_t l = 0; l < d; ++l) {
      in[l] = x[(base + layout.offsets[l]) * stride];
    }
    for (std::size_t r = 0; r < d; ++r) {
      Complex acc = 0.0;
      for (std::size_t l = 0; l < d; ++l) {
        acc += op(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(l)) * in[l];
      }
      x[(base + layout.offsets[r]) * stride] = acc;
    }
  });
}

} // namespace

void apply_left(ComplexVector &state, const ComplexMatrix &op, std::span<const std::size_t> qubits,
                std::size_t num_qubits) {
  const Layout layout = make_layout(op, qubits, num_qubits);
  if (static_cast<std::size_t>(state.size()) != layout.dim) {
    throw DimensionError("apply_left: state length does not match qubit count");
  }
  left_on_strided(state.data(), 1, layout, op);
}

void apply_left(ComplexMatrix &m, const ComplexMatrix &op, std::span<const std::size_t> qubits,
                std::size_t num_qubits) {
  const Layout layout = make_layout(op, qubits, num_qubits);
  if (static_cast<std::size_t>(m.rows()) != layout.dim) {
    throw DimensionError("apply_left: matrix rows do not match qubit count");
  }
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    left_on_strided(m.data() + j * m.rows(), 1, layout, op);
  }
}

void apply_right_adjoint(ComplexMatrix &m, const ComplexMatrix &op,
                         std::span<const std::size_t> qubits, std::size_t num_qubits) {
  const Layout layout = make_layout(op, qubits, num_qubits);
  if (static_cast<std::size_t>(m.cols()) != layout.dim) {
    throw DimensionError("apply_right_adjoint: matrix columns do not match qubit count");
  }
  // (m G^dagger)^T = conj(G) m^T: rows of m transform like vectors under
  // conj(G), with elements of a row strided by m.rows().
  const ComplexMatrix conj_op = op.conjugate();
  const auto stride = static_cast<std::size_t>(m.rows());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    left_on_strided(m.data() + i, stride, layout, conj_op);
  }
}

void conjugate(ComplexMatrix &m, const ComplexMatrix &op, std::span<const std::size_t> qubits,
               std::size_t num_qubits) {
  apply_left(m, op, qubits, num_qubits);
  apply_right_adjoint(m, op, qubits, num_qubits);
}

ComplexMatrix embed(const ComplexMatrix &op, std::span<const std::size_t> qubits,
                    std::size_t num_qubits) {
  const auto dim = static_cast<Eigen::Index>(dimension_of(num_qubits));
  ComplexMatrix out = ComplexMatrix::Identity(dim, dim);
  apply_left(out, op, qubits, num_qubits);
  return out;
}

} // namespace qadv::kernels
