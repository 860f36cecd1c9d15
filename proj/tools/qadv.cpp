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

// qadv <detect|reproduce-pure|reproduce-mixed|witness-sweep|confusion>
//      [--config PATH] [--seed N] [--out DIR] [--shots N] [--set K=V]...
//
// Exit status: detect returns 0 for separable and 1 for entangled; other
// commands return 0 on success. Any error returns 2.

#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qadv/errors.hpp"
#include "qadv/experiments.hpp"

namespace {

struct CommonFlags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::optional<std::uint64_t> shots;
  std::vector<std::string> sets;
};

void add_common(CLI::App *cmd, CommonFlags &f) {
  cmd->add_option("--config", f.config, "JSON experiment config");
  cmd->add_option("--seed", f.seed, "Master seed");
  cmd->add_option("--out", f.out, "Output directory");
  cmd->add_option("--shots", f.shots, "Shots per expectation (0 = exact)");
  cmd->add_option("--set", f.sets, "Override a config key, e.g. game.iterations=200");
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Entanglement detection by a quantum adversarial game"};
  app.require_subcommand(1);
  CommonFlags flags;
  const std::vector<std::string> names = {"detect", "reproduce-pure", "reproduce-mixed",
                                          "witness-sweep", "confusion"};
  const std::vector<std::string> help = {
      "Label one input state as separable or entangled",
      "Rerun the two five-qubit benchmark detections",
      "Rerun the two two-qubit mixed-state benchmark detections",
      "Tabulate the GHZ witness and PPT over the noise family",
      "Compare game verdicts with PPT on random two-qubit states"};
  for (std::size_t i = 0; i < names.size(); ++i) {
    add_common(app.add_subcommand(names[i], help[i]), flags);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return 2;
  }

  try {
    std::vector<std::string> overrides;
    overrides.push_back("experiment=\"" + app.get_subcommands().front()->get_name() + "\"");
    overrides.insert(overrides.end(), flags.sets.begin(), flags.sets.end());
    if (flags.seed) {
      overrides.push_back("seed=" + std::to_string(*flags.seed));
    }
    if (flags.shots) {
      overrides.push_back("game.shots=" + std::to_string(*flags.shots));
    }
    if (!flags.out.empty()) {
      overrides.push_back("out=" + qadv::Json(flags.out).dump());
    }
    std::optional<std::filesystem::path> path;
    if (!flags.config.empty()) {
      path = flags.config;
    }
    const qadv::ExperimentConfig cfg = qadv::load_experiment_config(path, overrides);
    return qadv::run_experiment(cfg, std::cout);
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
