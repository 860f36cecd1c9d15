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
#include "qadv/oracles.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "qadv/benchmarks.hpp"
#include "qadv/errors.hpp"
#include "qadv/random.hpp"

namespace qadv {

WitnessOperator::WitnessOperator(std::size_t num_qubits) : n_(num_qubits) {
  const auto g = ghz_state(num_qubits).amplitudes();
  const auto dim = g.size();
  w_ = 0.5 * ComplexMatrix::Identity(dim, dim) - g * g.adjoint();
}

double WitnessOperator::value(const DensityMatrix &rho) const {
  if (rho.num_qubits() != n_) {
    throw DimensionError("witness acts on " + std::to_string(n_) + " qubits, state has " +
                         std::to_string(rho.num_qubits()));
  }
  return trace_product_real(w_, rho.matrix());
}

double witness_value(const DensityMatrix &rho) {
  return WitnessOperator(rho.num_qubits()).value(rho);
}

std::string_view to_string(PptLabel label) {
  return label == PptLabel::Ppt ? "ppt" : "entangled";
}

PptResult ppt_verdict(const DensityMatrix &rho, const Bipartition &cut) {
  PptResult r;
  r.min_eigenvalue = eig_hermitian(partial_transpose(rho, cut)).values(0);
  r.label = r.min_eigenvalue < -kPsdSlack ? PptLabel::Entangled : PptLabel::Ppt;
  const auto small = std::min(cut.part_a().size(), cut.part_b().size());
  const auto large = std::max(cut.part_a().size(), cut.part_b().size());
  // 2x2 and 2x3 need one qubit per side; a qutrit never arises with qubits.
  r.exact = small == 1 && large == 1;
  return r;
}

StateFamily state_family_from_string(std::string_view name) {
  if (name == "rho_s") {
    return StateFamily::RhoS;
  }
  if (name == "rho_e") {
    return StateFamily::RhoE;
  }
  throw ConfigError("unknown state family '" + std::string(name) + "' (expected rho_s or rho_e)");
}

std::vector<WitnessRow> witness_sweep(StateFamily family, const std::vector<double> &grid) {
  const WitnessOperator w(2);
  std::vector<WitnessRow> rows;
  rows.reserve(grid.size());
  for (double p : grid) {
    const NoiseParam np(p);
    const auto rho = family == StateFamily::RhoS ? build_rho_s(np) : build_rho_e(np);
    rows.push_back({p, w.value(rho)});
  }
  return rows;
}

DensityMatrix random_mixed_state(std::size_t num_qubits, std::size_t rank, std::uint64_t seed) {
  const std::size_t dim = dimension_of(num_qubits);
  if (num_qubits > kDefaultMaxQubits) {
    throw DimensionError("random_mixed_state: too many qubits");
  }
  if (rank < 1 || rank > dim) {
    throw InvalidArgument("random_mixed_state: rank must lie in [1, " + std::to_string(dim) + "]");
  }
  Rng rng(seed);
  ComplexMatrix g(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(rank));
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    for (Eigen::Index j = 0; j < g.cols(); ++j) {
      const double re = rng.normal();
      const double im = rng.normal();
      g(i, j) = Complex(re, im);
    }
  }
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix::from_matrix(0.5 * (rho + rho.adjoint()));
}

DensityMatrix random_product_state(std::size_t qubits_a, std::size_t qubits_b,
                                   std::uint64_t seed) {
  const auto a = random_mixed_state(qubits_a, dimension_of(qubits_a), Rng::derive(seed, 0));
  const auto b = random_mixed_state(qubits_b, dimension_of(qubits_b), Rng::derive(seed, 1));
  return tensor_product(a, b);
}

Ensemble ensemble_from_string(std::string_view name) {
  if (name == "ginibre") {
    return Ensemble::Ginibre;
  }
  if (name == "product") {
    return Ensemble::Product;
  }
  throw ConfigError("unknown ensemble '" + std::string(name) + "' (expected ginibre or product)");
}

std::string_view to_string(Ensemble e) {
  return e == Ensemble::Ginibre ? "ginibre" : "product";
}

ConfusionResult confusion_matrix(const ConfusionOptions &opts, const Generator &gen,
                                 const DiscriminatorModel &disc) {
  if (opts.samples == 0) {
    throw InvalidArgument("confusion_matrix: sample count must be positive");
  }
  if (gen.num_qubits() != 2 || disc.num_qubits() != 2) {
    throw DimensionError("confusion_matrix: needs a two-qubit generator and discriminator");
  }
  opts.game.validate();
  const Bipartition cut = Bipartition::contiguous(1, 2);

  std::vector<ConfusionSample> samples(opts.samples);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < opts.samples; i = next++) {
      try {
        const std::uint64_t state_seed = Rng::derive(opts.seed, 2 * i);
        const DensityMatrix rho = opts.ensemble == Ensemble::Ginibre
                                      ? random_mixed_state(2, 4, state_seed)
                                      : random_product_state(1, 1, state_seed);
        const PptResult ppt = ppt_verdict(rho, cut);
        GameConfig cfg = opts.game;
        cfg.seed = Rng::derive(opts.seed, 2 * i + 1);
        cfg.record_parameters = false;
        const DetectionResult det = detect(rho, gen, disc, cfg);
        samples[i] = ConfusionSample{
            i, ppt.min_eigenvalue,
            ppt.label == PptLabel::Entangled ? Label::Entangled : Label::Separable,
            det.verdict.label, det.verdict.final_loss};
      } catch (...) {
        const std::lock_guard lock(failure_mutex);
        if (!failure) {
          failure = std::current_exception();
        }
        next = opts.samples;
      }
    }
  };
  std::size_t threads = opts.threads > 0 ? opts.threads : std::thread::hardware_concurrency();
  threads = std::clamp<std::size_t>(threads, 1, opts.samples);
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) {
    pool.emplace_back(worker);
  }
  worker();
  for (auto &t : pool) {
    t.join();
  }
  if (failure) {
    std::rethrow_exception(failure);
  }

  ConfusionResult out;
  std::size_t excluded_correct = 0;
  for (const auto &s : samples) {
    const bool truth_ent = s.truth == Label::Entangled;
    const bool pred_ent = s.predicted == Label::Entangled;
    out.tp += truth_ent && pred_ent;
    out.fn += truth_ent && !pred_ent;
    out.fp += !truth_ent && pred_ent;
    out.tn += !truth_ent && !pred_ent;
    if (std::abs(s.min_pt_eigenvalue) > opts.boundary_margin) {
      ++out.boundary_excluded;
      excluded_correct += s.truth == s.predicted;
    }
  }
  out.accuracy = static_cast<double>(out.tp + out.tn) / static_cast<double>(samples.size());
  out.boundary_excluded_accuracy =
      out.boundary_excluded == 0
          ? 1.0
          : static_cast<double>(excluded_correct) / static_cast<double>(out.boundary_excluded);
  out.samples = std::move(samples);
  return out;
}

} // namespace qadv
