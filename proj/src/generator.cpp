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
#include "qadv/generator.hpp"

#include <numbers>
#include <sstream>

#include "qadv/errors.hpp"
#include "qadv/kernels.hpp"

namespace qadv {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2;

void check_well_formed(const GeneratorSpec &spec) {
  const std::size_t n = spec.num_system_qubits();
  const std::size_t total = spec.circuit.num_qubits();
  if (total < n) {
    throw InvalidArgument("generator circuit has " + std::to_string(total) +
                          " qubits, fewer than the " + std::to_string(n) + " system qubits");
  }
  for (std::size_t q = n; q < total; ++q) {
    if (!spec.ancilla_sides.contains(q)) {
      throw InvalidArgument("ancilla qubit " + std::to_string(q) + " has no side assignment");
    }
  }
  for (const auto &[q, side] : spec.ancilla_sides) {
    if (q < n || q >= total) {
      throw InvalidArgument("side assignment for qubit " + std::to_string(q) +
                            ", which is not an ancilla");
    }
  }
}

/// Tr(M psi psi^dagger)
double pure_expectation(const ComplexMatrix &m, const ComplexVector &psi) {
  return psi.dot(m * psi).real();
}

} // namespace

std::vector<std::size_t> GeneratorSpec::traced_qubits() const {
  std::vector<std::size_t> out;
  for (std::size_t q = num_system_qubits(); q < circuit.num_qubits(); ++q) {
    out.push_back(q);
  }
  return out;
}

Side GeneratorSpec::side_of(std::size_t qubit) const {
  if (qubit < num_system_qubits()) {
    return cut.in_a(qubit) ? Side::A : Side::B;
  }
  const auto it = ancilla_sides.find(qubit);
  if (it == ancilla_sides.end()) {
    throw InvalidArgument("qubit " + std::to_string(qubit) + " has no side");
  }
  return it->second;
}

std::string SeparabilityReport::describe() const {
  if (ok()) {
    return "ok";
  }
  std::ostringstream os;
  if (!offending_gates.empty()) {
    os << "gates crossing the cut at index";
    for (auto i : offending_gates) {
      os << ' ' << i;
    }
  }
  if (channel_spans_cut) {
    os << (offending_gates.empty() ? "" : "; ") << "channel acts across the cut";
  }
  return os.str();
}

SeparabilityReport validate_separability(const GeneratorSpec &spec) {
  check_well_formed(spec);
  SeparabilityReport report;
  const auto &gates = spec.circuit.gates();
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const auto &qs = gates[i].qubits;
    const Side first = spec.side_of(qs.front());
    for (auto q : qs) {
      if (spec.side_of(q) != first) {
        report.offending_gates.push_back(i);
        break;
      }
    }
  }
  if (spec.channel) {
    const auto &qs = spec.channel->qubits();
    for (auto q : qs) {
      if (q >= spec.circuit.num_qubits()) {
        throw InvalidArgument("channel qubit " + std::to_string(q) + " is outside the register");
      }
      if (spec.side_of(q) != spec.side_of(qs.front())) {
        report.channel_spans_cut = true;
      }
    }
  }
  return report;
}

SeparabilityReport validate_separability(const MixtureGeneratorSpec &spec) {
  const std::size_t expected = dimension_of(spec.selector.num_qubits());
  if (spec.branches.size() != expected) {
    throw InvalidArgument("mixture needs " + std::to_string(expected) + " branches, got " +
                          std::to_string(spec.branches.size()));
  }
  SeparabilityReport merged;
  std::size_t offset = 0;
  for (const auto &b : spec.branches) {
    if (b.cut.part_a() != spec.branches.front().cut.part_a() ||
        b.cut.part_b() != spec.branches.front().cut.part_b()) {
      throw InvalidArgument("mixture branches declare different cuts");
    }
    const auto r = validate_separability(b);
    for (auto i : r.offending_gates) {
      merged.offending_gates.push_back(offset + i);
    }
    merged.channel_spans_cut = merged.channel_spans_cut || r.channel_spans_cut;
    offset += b.circuit.gates().size();
  }
  return merged;
}

DensityMatrix generate_state(const GeneratorSpec &spec, const ParamVector &params) {
  return CircuitGenerator(spec).state(params.span());
}

// ---------------------------------------------------------------------------

CircuitGenerator::CircuitGenerator(GeneratorSpec spec)
    : spec_(std::move(spec)), program_(Program::compile(spec_.circuit)) {
  const auto report = validate_separability(spec_);
  if (!report.ok()) {
    throw SeparabilityViolation(report.describe());
  }
}

ComplexMatrix CircuitGenerator::system_state(std::span<const double> params,
                                             const AngleShift *shift) const {
  const std::size_t total = spec_.circuit.num_qubits();
  ComplexVector psi = ComplexVector::Zero(static_cast<Eigen::Index>(dimension_of(total)));
  psi(0) = 1.0;
  program_.apply(psi, params, shift);
  ComplexMatrix rho = psi * psi.adjoint();
  if (spec_.channel) {
    apply_kraus_in_place(*spec_.channel, rho, total);
  }
  if (spec_.ancilla_sides.empty()) {
    return rho;
  }
  return partial_trace(DensityMatrix::from_trusted(total, std::move(rho)), spec_.traced_qubits())
      .matrix();
}

DensityMatrix CircuitGenerator::state(std::span<const double> params) const {
  if (params.size() != num_params()) {
    throw InvalidArgument("generator expects " + std::to_string(num_params()) +
                          " parameters, got " + std::to_string(params.size()));
  }
  return DensityMatrix::from_trusted(num_qubits(), system_state(params, nullptr));
}

double CircuitGenerator::shifted_expectation(const ComplexMatrix &m,
                                             std::span<const double> params,
                                             const AngleShift *shift) const {
  if (pure_output()) {
    ComplexVector psi =
        ComplexVector::Zero(static_cast<Eigen::Index>(dimension_of(spec_.circuit.num_qubits())));
    psi(0) = 1.0;
    program_.apply(psi, params, shift);
    return pure_expectation(m, psi);
  }
  return trace_product_real(m, system_state(params, shift));
}

double CircuitGenerator::expectation(const ComplexMatrix &m,
                                     std::span<const double> params) const {
  return shifted_expectation(m, params, nullptr);
}

std::vector<Program::ShiftPair> CircuitGenerator::shift_pairs(
    const ComplexMatrix &m, std::span<const double> params) const {
  const std::size_t total = spec_.circuit.num_qubits();
  const auto dim = static_cast<Eigen::Index>(dimension_of(total));
  // Heisenberg picture: pull M (x) I_anc back through the channel.
  const auto anc_dim = static_cast<Eigen::Index>(dimension_of(total - num_qubits()));
  ComplexMatrix x = kron(m, ComplexMatrix::Identity(anc_dim, anc_dim));
  if (spec_.channel) {
    ComplexMatrix pulled = ComplexMatrix::Zero(dim, dim);
    for (const auto &k : spec_.channel->operators()) {
      ComplexMatrix term = x;
      kernels::conjugate(term, k.adjoint(), spec_.channel->qubits(), total);
      pulled += term;
    }
    x = std::move(pulled);
  }
  ComplexMatrix zero = ComplexMatrix::Zero(dim, dim);
  zero(0, 0) = 1.0;
  return program_.shift_pairs(params, zero, x);
}

std::vector<double> CircuitGenerator::expectation_gradient(const ComplexMatrix &m,
                                                           std::span<const double> params,
                                                           const Estimator *estimate) const {
  std::vector<double> grad(num_params(), 0.0);
  const auto &terms = program_.shift_terms();
  const auto pairs = shift_pairs(m, params);
  for (std::size_t j = 0; j < terms.size(); ++j) {
    double fp = pairs[j].plus;
    double fm = pairs[j].minus;
    if (estimate) {
      fp = (*estimate)(fp);
      fm = (*estimate)(fm);
    }
    for (const auto &[index, coeff] : terms[j].coefficients) {
      grad[index] += coeff * 0.5 * (fp - fm);
    }
  }
  return grad;
}

// ---------------------------------------------------------------------------

MixtureGenerator::MixtureGenerator(MixtureGeneratorSpec spec)
    : selector_(Program::compile(spec.selector)) {
  const auto report = validate_separability(spec);
  if (!report.ok()) {
    throw SeparabilityViolation(report.describe());
  }
  for (const auto &name : spec.selector.parameter_names()) {
    names_.push_back("w." + name);
  }
  for (std::size_t k = 0; k < spec.branches.size(); ++k) {
    offsets_.push_back(names_.size());
    for (const auto &name : spec.branches[k].circuit.parameter_names()) {
      names_.push_back("b" + std::to_string(k) + "." + name);
    }
    branches_.emplace_back(std::move(spec.branches[k]));
  }
}

std::span<const double> MixtureGenerator::branch_params(std::span<const double> params,
                                                        std::size_t k) const {
  return params.subspan(offsets_[k], branches_[k].num_params());
}

std::vector<double> MixtureGenerator::selector_weights(std::span<const double> selector_params,
                                                       const AngleShift *shift) const {
  ComplexVector amps =
      ComplexVector::Zero(static_cast<Eigen::Index>(dimension_of(selector_.num_qubits())));
  amps(0) = 1.0;
  selector_.apply(amps, selector_params, shift);
  std::vector<double> w(static_cast<std::size_t>(amps.size()));
  for (Eigen::Index k = 0; k < amps.size(); ++k) {
    w[static_cast<std::size_t>(k)] = std::norm(amps(k));
  }
  return w;
}

std::vector<double> MixtureGenerator::weights(std::span<const double> params) const {
  if (params.size() != num_params()) {
    throw InvalidArgument("mixture generator expects " + std::to_string(num_params()) +
                          " parameters, got " + std::to_string(params.size()));
  }
  return selector_weights(params.first(selector_.num_params()), nullptr);
}

DensityMatrix MixtureGenerator::state(std::span<const double> params) const {
  const auto w = weights(params);
  const auto dim = static_cast<Eigen::Index>(dimension_of(num_qubits()));
  ComplexMatrix sigma = ComplexMatrix::Zero(dim, dim);
  for (std::size_t k = 0; k < branches_.size(); ++k) {
    sigma += w[k] * branches_[k].state(branch_params(params, k)).matrix();
  }
  return DensityMatrix::from_trusted(num_qubits(), std::move(sigma));
}

double MixtureGenerator::expectation(const ComplexMatrix &m,
                                     std::span<const double> params) const {
  const auto w = weights(params);
  double total = 0.0;
  for (std::size_t k = 0; k < branches_.size(); ++k) {
    total += w[k] * branches_[k].expectation(m, branch_params(params, k));
  }
  return total;
}

std::vector<double> MixtureGenerator::expectation_gradient(const ComplexMatrix &m,
                                                           std::span<const double> params,
                                                           const Estimator *estimate) const {
  const auto w = weights(params);
  std::vector<double> f(branches_.size());
  double base = 0.0;
  for (std::size_t k = 0; k < branches_.size(); ++k) {
    f[k] = branches_[k].expectation(m, branch_params(params, k));
    base += w[k] * f[k];
  }
  auto est = [estimate](double v) { return estimate ? (*estimate)(v) : v; };

  std::vector<double> grad(num_params(), 0.0);
  const auto sel = params.first(selector_.num_params());
  const auto &sel_terms = selector_.shift_terms();
  for (std::size_t j = 0; j < sel_terms.size(); ++j) {
    const AngleShift plus{j, kHalfPi};
    const AngleShift minus{j, -kHalfPi};
    const auto wp = selector_weights(sel, &plus);
    const auto wm = selector_weights(sel, &minus);
    double fp = 0.0;
    double fm = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k) {
      fp += wp[k] * f[k];
      fm += wm[k] * f[k];
    }
    const double d = 0.5 * (est(fp) - est(fm));
    for (const auto &[index, coeff] : sel_terms[j].coefficients) {
      grad[index] += coeff * d;
    }
  }
  for (std::size_t k = 0; k < branches_.size(); ++k) {
    const auto bp = branch_params(params, k);
    const auto &terms = branches_[k].program().shift_terms();
    const auto pairs = branches_[k].shift_pairs(m, bp);
    const double rest = base - w[k] * f[k];
    for (std::size_t j = 0; j < terms.size(); ++j) {
      const double fp = rest + w[k] * pairs[j].plus;
      const double fm = rest + w[k] * pairs[j].minus;
      const double d = 0.5 * (est(fp) - est(fm));
      for (const auto &[index, coeff] : terms[j].coefficients) {
        grad[offsets_[k] + index] += coeff * d;
      }
    }
  }
  return grad;
}

} // namespace qadv
