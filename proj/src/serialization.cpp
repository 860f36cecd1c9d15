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
#include "qadv/serialization.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "qadv/errors.hpp"

namespace qadv {

namespace {

template <typename T> T get_field(const Json &j, const char *key) {
  if (!j.contains(key)) {
    throw ConfigError(std::string("missing field '") + key + "'");
  }
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception &e) {
    throw ConfigError(std::string("field '") + key + "': " + e.what());
  }
}

template <typename T> void read_optional(const Json &j, const char *key, T &out) {
  if (!j.contains(key)) {
    return;
  }
  try {
    out = j.at(key).get<T>();
  } catch (const nlohmann::json::exception &e) {
    throw ConfigError(std::string("field '") + key + "': " + e.what());
  }
}

} // namespace

Json to_json(const DensityMatrix &rho) {
  Json re = Json::array();
  Json im = Json::array();
  for (std::size_t i = 0; i < rho.dim(); ++i) {
    Json r = Json::array();
    Json m = Json::array();
    for (std::size_t k = 0; k < rho.dim(); ++k) {
      r.push_back(rho(i, k).real());
      m.push_back(rho(i, k).imag());
    }
    re.push_back(std::move(r));
    im.push_back(std::move(m));
  }
  return Json{{"num_qubits", rho.num_qubits()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

DensityMatrix density_matrix_from_json(const Json &j, std::size_t max_qubits) {
  if (!j.is_object()) {
    throw ConfigError("density matrix: expected a JSON object");
  }
  const auto n = get_field<std::size_t>(j, "num_qubits");
  if (n > max_qubits) {
    throw DimensionError("density matrix: " + std::to_string(n) + " qubits exceeds the cap of " +
                         std::to_string(max_qubits));
  }
  const auto re = get_field<std::vector<std::vector<double>>>(j, "re");
  std::vector<std::vector<double>> im;
  if (j.contains("im")) {
    im = get_field<std::vector<std::vector<double>>>(j, "im");
  }
  const std::size_t dim = dimension_of(n);
  auto check_shape = [dim](const std::vector<std::vector<double>> &rows, const char *what) {
    if (rows.size() != dim) {
      throw ConfigError(std::string("density matrix: '") + what + "' has " +
                        std::to_string(rows.size()) + " rows, expected " + std::to_string(dim));
    }
    for (const auto &r : rows) {
      if (r.size() != dim) {
        throw ConfigError(std::string("density matrix: '") + what + "' row length " +
                          std::to_string(r.size()) + ", expected " + std::to_string(dim));
      }
    }
  };
  check_shape(re, "re");
  if (!im.empty()) {
    check_shape(im, "im");
  }
  const auto d = static_cast<Eigen::Index>(dim);
  ComplexMatrix m(d, d);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          Complex(re[r][c], im.empty() ? 0.0 : im[r][c]);
    }
  }
  return DensityMatrix::from_matrix(m);
}

DensityMatrix load_density_matrix(const std::filesystem::path &path, std::size_t max_qubits) {
  const std::string text = read_text_file(path);
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error &e) {
    throw ConfigError("cannot parse " + path.string() + ": " + e.what());
  }
  return density_matrix_from_json(j, max_qubits);
}

void save_density_matrix(const std::filesystem::path &path, const DensityMatrix &rho) {
  write_text_file(path, to_json(rho).dump(2) + "\n");
}

Json to_json(const ParamCircuit &c) {
  Json gates = Json::array();
  for (const auto &g : c.gates()) {
    Json slots = Json::array();
    for (const auto &s : g.angles) {
      if (s.is_named()) {
        slots.push_back(s.name);
      } else {
        slots.push_back(s.value);
      }
    }
    gates.push_back(Json{{"kind", std::string(to_string(g.kind))},
                         {"qubits", g.qubits},
                         {"slots", std::move(slots)}});
  }
  return gates;
}

ParamCircuit circuit_from_json(const Json &j, std::optional<std::size_t> num_qubits) {
  if (!j.is_array()) {
    throw ConfigError("circuit: expected a JSON list of gate records");
  }
  std::vector<Gate> gates;
  std::size_t width = 1;
  for (const auto &rec : j) {
    if (!rec.is_object()) {
      throw ConfigError("circuit: gate record is not an object");
    }
    GateKind kind;
    try {
      kind = gate_kind_from_string(get_field<std::string>(rec, "kind"));
    } catch (const InvalidArgument &e) {
      throw ConfigError(std::string("circuit: ") + e.what());
    }
    const auto qubits = get_field<std::vector<std::size_t>>(rec, "qubits");
    std::vector<AngleSlot> slots;
    const char *key = rec.contains("slots") ? "slots" : "params";
    if (rec.contains(key)) {
      for (const auto &s : rec.at(key)) {
        if (s.is_string()) {
          slots.push_back(AngleSlot::param(s.get<std::string>()));
        } else if (s.is_number()) {
          slots.push_back(AngleSlot::fixed(s.get<double>()));
        } else {
          throw ConfigError("circuit: slot must be a parameter name or a number");
        }
      }
    }
    for (auto q : qubits) {
      width = std::max(width, q + 1);
    }
    try {
      gates.push_back(make_gate(kind, qubits, std::move(slots)));
    } catch (const InvalidArgument &e) {
      throw ConfigError(std::string("circuit: ") + e.what());
    }
  }
  ParamCircuit c(num_qubits.value_or(width));
  for (auto &g : gates) {
    c.append(std::move(g));
  }
  return c;
}

Json to_json(const Verdict &v) {
  return Json{{"label", std::string(to_string(v.label))},
              {"final_loss", v.final_loss},
              {"gap", v.gap},
              {"iterations", v.iterations},
              {"seed", v.seed}};
}

Json to_json(const GameConfig &cfg) {
  return Json{{"iterations", cfg.iterations},
              {"generator_steps", cfg.generator_steps},
              {"discriminator_steps", cfg.discriminator_steps},
              {"lr_generator", cfg.lr_generator},
              {"lr_discriminator", cfg.lr_discriminator},
              {"schedule", std::string(to_string(cfg.schedule))},
              {"lr_decay", cfg.lr_decay},
              {"lr_final_fraction", cfg.lr_final_fraction},
              {"optimizer", std::string(to_string(cfg.optimizer))},
              {"epsilon", cfg.epsilon},
              {"shots", cfg.shots},
              {"window", cfg.window},
              {"restarts", cfg.restarts},
              {"early_stop", cfg.early_stop},
              {"min_iterations", cfg.min_iterations},
              {"stop_on_separable", cfg.stop_on_separable},
              {"freeze_generator", cfg.freeze_generator},
              {"record_parameters", cfg.record_parameters},
              {"seed", cfg.seed}};
}

GameConfig game_config_from_json(const Json &j, GameConfig base) {
  if (!j.is_object()) {
    throw ConfigError("game config: expected an object");
  }
  static const std::vector<std::string> known = {
      "iterations",     "generator_steps",   "discriminator_steps", "lr_generator",
      "lr_discriminator", "schedule",        "lr_decay",            "lr_final_fraction",
      "optimizer",      "epsilon",           "shots",               "window",
      "restarts",       "early_stop",        "min_iterations",      "stop_on_separable",
      "freeze_generator", "record_parameters", "seed"};
  for (const auto &[key, value] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ConfigError("game config: unknown key '" + key + "'");
    }
  }
  read_optional(j, "iterations", base.iterations);
  read_optional(j, "generator_steps", base.generator_steps);
  read_optional(j, "discriminator_steps", base.discriminator_steps);
  read_optional(j, "lr_generator", base.lr_generator);
  read_optional(j, "lr_discriminator", base.lr_discriminator);
  read_optional(j, "lr_decay", base.lr_decay);
  read_optional(j, "lr_final_fraction", base.lr_final_fraction);
  read_optional(j, "epsilon", base.epsilon);
  read_optional(j, "shots", base.shots);
  read_optional(j, "window", base.window);
  read_optional(j, "restarts", base.restarts);
  read_optional(j, "early_stop", base.early_stop);
  read_optional(j, "min_iterations", base.min_iterations);
  read_optional(j, "stop_on_separable", base.stop_on_separable);
  read_optional(j, "freeze_generator", base.freeze_generator);
  read_optional(j, "record_parameters", base.record_parameters);
  read_optional(j, "seed", base.seed);
  if (j.contains("schedule")) {
    base.schedule = schedule_from_string(get_field<std::string>(j, "schedule"));
  }
  if (j.contains("optimizer")) {
    base.optimizer = optimizer_from_string(get_field<std::string>(j, "optimizer"));
  }
  base.validate();
  return base;
}

Json to_json(const GameTrace &trace) {
  Json records = Json::array();
  for (const auto &r : trace.records) {
    Json rec{{"t", r.t},
             {"loss", r.loss},
             {"exp_rho", r.exp_rho},
             {"exp_sigma", r.exp_sigma},
             {"distance", r.distance},
             {"avg_loss", r.avg_loss}};
    if (!r.theta.empty() || !r.gamma.empty()) {
      rec["theta"] = r.theta;
      rec["gamma"] = r.gamma;
    }
    records.push_back(std::move(rec));
  }
  return Json{{"verdict", to_json(trace.verdict)},
              {"final_theta", trace.final_theta},
              {"final_gamma", trace.final_gamma},
              {"records", std::move(records)}};
}

std::string config_hash(const Json &j) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : j.dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string read_text_file(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError("cannot open " + path.string());
  }
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::filesystem::path &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw ConfigError("cannot write " + path.string());
  }
  out << text;
  if (!out) {
    throw ConfigError("write failed for " + path.string());
  }
}

} // namespace qadv
