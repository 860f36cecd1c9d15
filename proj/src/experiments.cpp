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
#include "qadv/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "qadv/benchmarks.hpp"
#include "qadv/errors.hpp"

namespace qadv {

namespace {

std::string fixed(double x, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

template <typename T> void read_key(const Json &j, const char *key, T &out) {
  if (!j.contains(key)) {
    return;
  }
  try {
    out = j.at(key).get<T>();
  } catch (const nlohmann::json::exception &e) {
    throw ConfigError(std::string("config field '") + key + "': " + e.what());
  }
}

void reject_unknown(const Json &j, const std::vector<std::string> &known, const std::string &where) {
  if (!j.is_object()) {
    throw ConfigError(where + ": expected an object");
  }
  for (const auto &[key, value] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ConfigError(where + ": unknown key '" + key + "'");
    }
  }
}

std::vector<double> default_grid() {
  std::vector<double> g;
  for (int i = 0; i <= 10; ++i) {
    g.push_back(i / 10.0);
  }
  return g;
}

std::vector<double> parse_grid(const Json &j) {
  if (j.is_array()) {
    std::vector<double> g;
    read_key(Json{{"grid", j}}, "grid", g);
    return g;
  }
  reject_unknown(j, {"start", "stop", "step"}, "grid");
  double start = 0.0;
  double stop = 1.0;
  double step = 0.1;
  read_key(j, "start", start);
  read_key(j, "stop", stop);
  read_key(j, "step", step);
  if (!(step > 0.0) || stop < start) {
    throw ConfigError("grid: need step > 0 and stop >= start");
  }
  const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9));
  std::vector<double> g;
  for (std::size_t i = 0; i <= n; ++i) {
    g.push_back(start + static_cast<double>(i) * step);
  }
  return g;
}

struct Players {
  Preset generator_preset;
  std::unique_ptr<Generator> generator;
  DiscriminatorModel discriminator;
  std::string generator_name;
  std::string discriminator_name;
  Bipartition cut;
};

Players make_players(const ExperimentConfig &cfg, std::size_t n) {
  const std::string gname = cfg.generator.empty() ? default_generator(n) : cfg.generator;
  const std::string dname = cfg.discriminator.empty() ? default_discriminator(n) : cfg.discriminator;
  Preset gp = preset_ansatz(gname);
  auto gen = make_generator(gp);
  DiscriminatorModel disc(as_discriminator(preset_ansatz(dname)));
  if (gen->num_qubits() != n) {
    throw ConfigError("state has " + std::to_string(n) + " qubits but generator '" + gname +
                      "' produces " + std::to_string(gen->num_qubits()));
  }
  if (disc.num_qubits() != n) {
    throw ConfigError("state has " + std::to_string(n) + " qubits but discriminator '" + dname +
                      "' acts on " + std::to_string(disc.num_qubits()));
  }
  Bipartition cut = generator_cut(gp);
  if (!cfg.cut_a.empty() || !cfg.cut_b.empty()) {
    const Bipartition wanted = Bipartition::make(cfg.cut_a, cfg.cut_b, n);
    if (wanted.part_a() != cut.part_a() || wanted.part_b() != cut.part_b()) {
      throw ConfigError("configured cut does not match the cut of generator '" + gname + "'");
    }
  }
  return Players{std::move(gp), std::move(gen), std::move(disc), gname, dname, std::move(cut)};
}

Json runs_json(const DetectionResult &det) {
  Json runs = Json::array();
  for (const auto &r : det.runs) {
    runs.push_back(to_json(r.verdict));
  }
  return runs;
}

void ensure_dir(const std::filesystem::path &dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw ConfigError("cannot create output directory " + dir.string());
  }
}

GameConfig seeded_game(const ExperimentConfig &cfg) {
  GameConfig g = cfg.game;
  g.seed = cfg.seed;
  g.validate();
  return g;
}

} // namespace

std::string_view to_string(ExperimentKind kind) {
  switch (kind) {
  case ExperimentKind::Detect:
    return "detect";
  case ExperimentKind::ReproducePure:
    return "reproduce-pure";
  case ExperimentKind::ReproduceMixed:
    return "reproduce-mixed";
  case ExperimentKind::WitnessSweep:
    return "witness-sweep";
  case ExperimentKind::Confusion:
    return "confusion";
  }
  return "detect";
}

ExperimentKind experiment_kind_from_string(std::string_view name) {
  for (auto k : {ExperimentKind::Detect, ExperimentKind::ReproducePure,
                 ExperimentKind::ReproduceMixed, ExperimentKind::WitnessSweep,
                 ExperimentKind::Confusion}) {
    if (to_string(k) == name) {
      return k;
    }
  }
  if (name == "confusion-benchmark") {
    return ExperimentKind::Confusion;
  }
  throw ConfigError("unknown experiment '" + std::string(name) + "'");
}

ExperimentConfig ExperimentConfig::from_json(const Json &j) {
  reject_unknown(j,
                 {"experiment", "state", "cut", "generator", "discriminator", "game", "confusion",
                  "grid", "out", "seed"},
                 "config");
  ExperimentConfig c;
  if (j.contains("experiment")) {
    std::string k;
    read_key(j, "experiment", k);
    c.kind = experiment_kind_from_string(k);
  }
  if (j.contains("state")) {
    const Json &s = j.at("state");
    reject_unknown(s, {"kind", "p", "num_qubits", "rank", "seed", "path"}, "state");
    read_key(s, "kind", c.state.kind);
    read_key(s, "p", c.state.p);
    read_key(s, "num_qubits", c.state.num_qubits);
    read_key(s, "rank", c.state.rank);
    read_key(s, "seed", c.state.seed);
    read_key(s, "path", c.state.path);
  }
  if (j.contains("cut")) {
    const Json &s = j.at("cut");
    reject_unknown(s, {"part_a", "part_b"}, "cut");
    read_key(s, "part_a", c.cut_a);
    read_key(s, "part_b", c.cut_b);
  }
  read_key(j, "generator", c.generator);
  read_key(j, "discriminator", c.discriminator);
  if (j.contains("game")) {
    c.game = game_config_from_json(j.at("game"));
  }
  if (j.contains("confusion")) {
    const Json &s = j.at("confusion");
    reject_unknown(s,
                   {"samples", "ensemble", "threads", "boundary_margin", "epsilon",
                    "stop_on_separable"},
                   "confusion");
    read_key(s, "samples", c.confusion.samples);
    read_key(s, "threads", c.confusion.threads);
    read_key(s, "boundary_margin", c.confusion.boundary_margin);
    read_key(s, "epsilon", c.confusion.epsilon);
    read_key(s, "stop_on_separable", c.confusion.stop_on_separable);
    if (s.contains("ensemble")) {
      std::string e;
      read_key(s, "ensemble", e);
      c.confusion.ensemble = ensemble_from_string(e);
    }
    if (c.confusion.samples == 0 || !(c.confusion.epsilon > 0.0) ||
        c.confusion.boundary_margin < 0.0) {
      throw ConfigError("confusion: need samples > 0, epsilon > 0, boundary_margin >= 0");
    }
  }
  c.grid = j.contains("grid") ? parse_grid(j.at("grid")) : default_grid();
  for (double p : c.grid) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw ConfigError("grid value " + fixed(p) + " outside [0, 1]");
    }
  }
  std::string out = c.out_dir.string();
  read_key(j, "out", out);
  c.out_dir = out;
  read_key(j, "seed", c.seed);
  c.game.seed = c.seed;
  return c;
}

Json ExperimentConfig::to_json() const {
  return Json{{"experiment", std::string(qadv::to_string(kind))},
              {"state",
               {{"kind", state.kind},
                {"p", state.p},
                {"num_qubits", state.num_qubits},
                {"rank", state.rank},
                {"seed", state.seed},
                {"path", state.path}}},
              {"cut", {{"part_a", cut_a}, {"part_b", cut_b}}},
              {"generator", generator},
              {"discriminator", discriminator},
              {"game", qadv::to_json(game)},
              {"confusion",
               {{"samples", confusion.samples},
                {"ensemble", std::string(qadv::to_string(confusion.ensemble))},
                {"threads", confusion.threads},
                {"boundary_margin", confusion.boundary_margin},
                {"epsilon", confusion.epsilon},
                {"stop_on_separable", confusion.stop_on_separable}}},
              {"grid", grid},
              {"out", out_dir.string()},
              {"seed", seed}};
}

std::string ExperimentConfig::hash() const {
  // Output location and worker count do not change any result.
  Json j = to_json();
  j.erase("out");
  j["confusion"].erase("threads");
  return config_hash(j);
}

void apply_override(Json &j, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos || eq == 0) {
    throw ConfigError("override '" + std::string(assignment) + "' is not key=value");
  }
  const std::string key(assignment.substr(0, eq));
  const std::string text(assignment.substr(eq + 1));
  Json value;
  try {
    value = Json::parse(text);
  } catch (const nlohmann::json::parse_error &) {
    value = text;
  }
  Json *node = &j;
  std::size_t start = 0;
  while (true) {
    const auto dot = key.find('.', start);
    const std::string part = key.substr(start, dot == std::string::npos ? dot : dot - start);
    if (part.empty()) {
      throw ConfigError("override key '" + key + "' has an empty component");
    }
    if (!node->is_object()) {
      if (!node->is_null()) {
        throw ConfigError("override key '" + key + "' descends into a non-object");
      }
      *node = Json::object();
    }
    if (dot == std::string::npos) {
      (*node)[part] = std::move(value);
      return;
    }
    node = &(*node)[part];
    start = dot + 1;
  }
}

ExperimentConfig load_experiment_config(const std::optional<std::filesystem::path> &path,
                                        const std::vector<std::string> &overrides) {
  Json j = Json::object();
  if (path) {
    const std::string text = read_text_file(*path);
    try {
      j = Json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
      throw ConfigError("cannot parse " + path->string() + ": " + e.what());
    }
  }
  for (const auto &o : overrides) {
    apply_override(j, o);
  }
  return ExperimentConfig::from_json(j);
}

DensityMatrix build_state(const StateSpec &spec) {
  if (spec.kind == "rho_s") {
    return build_rho_s(NoiseParam(spec.p));
  }
  if (spec.kind == "rho_e") {
    return build_rho_e(NoiseParam(spec.p));
  }
  if (spec.kind == "rho_g23") {
    return build_pure_benchmarks().rho_g23;
  }
  if (spec.kind == "rho_g5") {
    return build_pure_benchmarks().rho_g5;
  }
  if (spec.kind == "ghz") {
    if (spec.num_qubits == 0 || spec.num_qubits > kDefaultMaxQubits) {
      throw DimensionError("ghz: num_qubits must lie in [1, " + std::to_string(kDefaultMaxQubits) +
                           "]");
    }
    return DensityMatrix::from_pure(ghz_state(spec.num_qubits));
  }
  if (spec.kind == "ginibre") {
    return random_mixed_state(spec.num_qubits, spec.rank, spec.seed);
  }
  if (spec.kind == "file") {
    if (spec.path.empty()) {
      throw ConfigError("state kind 'file' needs a path");
    }
    return load_density_matrix(spec.path);
  }
  throw ConfigError("unknown state kind '" + spec.kind + "'");
}

std::string default_generator(std::size_t num_qubits) {
  if (num_qubits == 2) {
    return "mixture_generator_2q";
  }
  if (num_qubits == 5) {
    return "pure_generator_5q";
  }
  throw ConfigError("no default generator for " + std::to_string(num_qubits) +
                    " qubits; set 'generator'");
}

std::string default_discriminator(std::size_t num_qubits) {
  if (num_qubits == 2) {
    return "deep_discriminator_2q";
  }
  if (num_qubits == 5) {
    return "pure_discriminator_5q";
  }
  throw ConfigError("no default discriminator for " + std::to_string(num_qubits) +
                    " qubits; set 'discriminator'");
}

Bipartition generator_cut(const Preset &preset) {
  if (const auto *g = std::get_if<GeneratorSpec>(&preset)) {
    return g->cut;
  }
  if (const auto *m = std::get_if<MixtureGeneratorSpec>(&preset)) {
    if (m->branches.empty()) {
      throw ConfigError("mixture generator has no branches");
    }
    return m->branches.front().cut;
  }
  throw ConfigError("preset is not a generator");
}

CsvTable trace_table(const GameTrace &trace) {
  CsvTable t({"t", "loss", "exp_rho", "exp_sigma", "distance"});
  for (const auto &r : trace.records) {
    t.add_row({std::to_string(r.t), format_double(r.loss), format_double(r.exp_rho),
               format_double(r.exp_sigma), format_double(r.distance)});
  }
  return t;
}

int cmd_detect(const ExperimentConfig &cfg, std::ostream &log) {
  const DensityMatrix rho = build_state(cfg.state);
  const std::size_t n = rho.num_qubits();
  const Players pl = make_players(cfg, n);
  const GameConfig game = seeded_game(cfg);
  ensure_dir(cfg.out_dir);

  const DetectionResult det = detect(rho, *pl.generator, pl.discriminator, game);
  const GameTrace &run = det.runs.at(det.selected);

  Json out = to_json(det.verdict);
  out["separable_runs"] = det.separable_runs;
  out["restarts"] = runs_json(det);
  out["selected"] = det.selected;
  out["generator"] = pl.generator_name;
  out["discriminator"] = pl.discriminator_name;
  out["epsilon"] = game.epsilon;
  out["config_hash"] = cfg.hash();

  log << "verdict: " << to_string(det.verdict.label) << " (final loss "
      << fixed(det.verdict.final_loss) << ", gap " << fixed(det.verdict.gap) << ", "
      << det.separable_runs << "/" << det.runs.size() << " restarts separable)\n";

  const PptResult ppt = ppt_verdict(rho, pl.cut);
  const bool agrees = (ppt.label == PptLabel::Entangled) == (det.verdict.label == Label::Entangled);
  out["ppt"] = Json{{"min_eigenvalue", ppt.min_eigenvalue},
                    {"label", std::string(to_string(ppt.label))},
                    {"exact", ppt.exact},
                    {"agrees", agrees}};
  log << "ppt cross-check: min PT eigenvalue " << fixed(ppt.min_eigenvalue, 6) << ", "
      << to_string(ppt.label) << (ppt.exact ? " (exact for this cut)" : " (necessary only)")
      << ", " << (agrees ? "agrees" : "disagrees") << " with the game\n";

  write_text_file(cfg.out_dir / "verdict.json", out.dump(2) + "\n");
  trace_table(run).write(cfg.out_dir / "trace.csv");
  const BoundReport bound = convergence_bound_monitor(run, n);
  if (bound.applicable) {
    CsvTable b({"t", "bound", "gap", "satisfied"});
    for (const auto &c : bound.checks) {
      b.add_row({std::to_string(c.t), format_double(c.bound), format_double(c.gap),
                 c.satisfied ? "1" : "0"});
    }
    b.write(cfg.out_dir / "bound.csv");
  }
  return det.verdict.label == Label::Separable ? 0 : 1;
}

std::vector<ReproducedRun> cmd_reproduce(const ExperimentConfig &cfg, bool mixed,
                                         std::ostream &log) {
  struct Case {
    std::string name;
    DensityMatrix rho;
    std::string gen;
    std::string disc;
  };
  std::vector<Case> cases;
  if (mixed) {
    cases.push_back({"rho_s", build_rho_s(NoiseParam(0.8)), "mixed_generator_2q",
                     "mixed_discriminator_2q"});
    cases.push_back({"rho_e", build_rho_e(NoiseParam(0.8)), "mixed_generator_2q",
                     "mixed_discriminator_2q"});
  } else {
    const PureBenchmarks pb = build_pure_benchmarks();
    cases.push_back({"rho_g23", pb.rho_g23, "pure_generator_5q", "pure_discriminator_5q"});
    cases.push_back({"rho_g5", pb.rho_g5, "pure_generator_5q", "pure_discriminator_5q"});
  }
  GameConfig game = seeded_game(cfg);
  game.record_parameters = true;
  ensure_dir(cfg.out_dir);

  const std::string kind = mixed ? "mixed" : "pure";
  CsvTable plot({"state", "t", "loss", "exp_rho", "exp_sigma", "fidelity"});
  Json summary = Json::array();
  std::vector<ReproducedRun> results;
  for (const auto &c : cases) {
    const auto gen = make_generator(preset_ansatz(c.gen));
    const DiscriminatorModel disc(as_discriminator(preset_ansatz(c.disc)));
    ReproducedRun r{c.name, detect(c.rho, *gen, disc, game), {}, std::nullopt};
    const GameTrace &run = r.detection.runs.at(r.detection.selected);

    CsvTable trace({"t", "loss", "exp_rho", "exp_sigma", "distance", "fidelity"});
    for (const auto &rec : run.records) {
      const double f = fidelity(c.rho, gen->state(rec.theta));
      r.fidelity.push_back(f);
      if (!r.band_entry && std::abs(rec.loss - 0.5) <= game.epsilon) {
        r.band_entry = rec.t;
      }
      trace.add_row({std::to_string(rec.t), format_double(rec.loss), format_double(rec.exp_rho),
                     format_double(rec.exp_sigma), format_double(rec.distance), format_double(f)});
      plot.add_row({c.name, std::to_string(rec.t), format_double(rec.loss),
                    format_double(rec.exp_rho), format_double(rec.exp_sigma), format_double(f)});
    }
    trace.write(cfg.out_dir / ("trace_" + c.name + ".csv"));

    const double final_f = r.fidelity.empty() ? 0.0 : r.fidelity.back();
    const double final_d = run.records.empty() ? 0.0 : run.records.back().distance;
    Json s = to_json(r.detection.verdict);
    s["state"] = c.name;
    s["generator"] = c.gen;
    s["discriminator"] = c.disc;
    s["separable_runs"] = r.detection.separable_runs;
    s["restarts"] = runs_json(r.detection);
    s["final_fidelity"] = final_f;
    s["final_distance"] = final_d;
    s["band_entry"] = r.band_entry ? Json(*r.band_entry) : Json(nullptr);
    summary.push_back(std::move(s));

    log << c.name << ": " << to_string(r.detection.verdict.label) << ", final loss "
        << fixed(r.detection.verdict.final_loss) << ", fidelity " << fixed(final_f)
        << ", distance " << fixed(final_d) << ", band entered at "
        << (r.band_entry ? std::to_string(*r.band_entry) : std::string("never")) << "\n";
    results.push_back(std::move(r));
  }
  plot.write(cfg.out_dir / ("plot_" + kind + ".csv"));
  write_text_file(cfg.out_dir / ("summary_" + kind + ".json"),
                  Json{{"runs", summary}, {"config_hash", cfg.hash()}}.dump(2) + "\n");
  return results;
}

CsvTable cmd_witness_sweep(const ExperimentConfig &cfg, std::ostream &log) {
  const std::vector<double> grid = cfg.grid.empty() ? default_grid() : cfg.grid;
  const auto ws = witness_sweep(StateFamily::RhoS, grid);
  const auto we = witness_sweep(StateFamily::RhoE, grid);
  const Bipartition cut = Bipartition::contiguous(1, 2);
  CsvTable t({"p", "witness_rho_s", "witness_rho_e", "ppt_min_eig_rho_e"});
  std::size_t missed = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const PptResult ppt = ppt_verdict(build_rho_e(NoiseParam(grid[i])), cut);
    t.add_numeric_row({grid[i], ws[i].value, we[i].value, ppt.min_eigenvalue});
    missed += ppt.label == PptLabel::Entangled && we[i].value >= 0.0;
  }
  ensure_dir(cfg.out_dir);
  t.write(cfg.out_dir / "sweep.csv");
  log << "witness sweep: " << grid.size() << " points, " << missed
      << " entangled rho_e points not flagged by the witness\n";
  return t;
}

ConfusionResult cmd_confusion(const ExperimentConfig &cfg, std::ostream &log) {
  const std::size_t n = 2;
  const Players pl = make_players(cfg, n);
  ConfusionOptions opts;
  opts.samples = cfg.confusion.samples;
  opts.seed = cfg.seed;
  opts.ensemble = cfg.confusion.ensemble;
  opts.threads = cfg.confusion.threads;
  opts.boundary_margin = cfg.confusion.boundary_margin;
  opts.game = seeded_game(cfg);
  opts.game.epsilon = cfg.confusion.epsilon;
  opts.game.stop_on_separable = cfg.confusion.stop_on_separable;
  opts.game.record_parameters = false;
  opts.game.validate();
  ensure_dir(cfg.out_dir);

  ConfusionResult r = confusion_matrix(opts, *pl.generator, pl.discriminator);

  const Json j{{"tp", r.tp},
               {"fp", r.fp},
               {"tn", r.tn},
               {"fn", r.fn},
               {"accuracy", r.accuracy},
               {"samples", opts.samples},
               {"ensemble", std::string(to_string(opts.ensemble))},
               {"epsilon", opts.game.epsilon},
               {"boundary_margin", opts.boundary_margin},
               {"boundary_excluded_samples", r.boundary_excluded},
               {"boundary_excluded_accuracy", r.boundary_excluded_accuracy},
               {"seed", cfg.seed},
               {"config_hash", cfg.hash()}};
  write_text_file(cfg.out_dir / "confusion.json", j.dump(2) + "\n");

  CsvTable t({"index", "min_pt_eigenvalue", "truth", "predicted", "final_loss"});
  for (const auto &s : r.samples) {
    t.add_row({std::to_string(s.index), format_double(s.min_pt_eigenvalue),
               std::string(to_string(s.truth)), std::string(to_string(s.predicted)),
               format_double(s.final_loss)});
  }
  t.write(cfg.out_dir / "confusion_samples.csv");

  log << "confusion: tp " << r.tp << " fp " << r.fp << " tn " << r.tn << " fn " << r.fn
      << ", accuracy " << fixed(r.accuracy) << ", boundary-excluded accuracy "
      << fixed(r.boundary_excluded_accuracy) << " over " << r.boundary_excluded << " samples\n";
  return r;
}

int run_experiment(const ExperimentConfig &cfg, std::ostream &log) {
  switch (cfg.kind) {
  case ExperimentKind::Detect:
    return cmd_detect(cfg, log);
  case ExperimentKind::ReproducePure:
    cmd_reproduce(cfg, false, log);
    return 0;
  case ExperimentKind::ReproduceMixed:
    cmd_reproduce(cfg, true, log);
    return 0;
  case ExperimentKind::WitnessSweep:
    cmd_witness_sweep(cfg, log);
    return 0;
  case ExperimentKind::Confusion:
    cmd_confusion(cfg, log);
    return 0;
  }
  return 2;
}

} // namespace qadv
