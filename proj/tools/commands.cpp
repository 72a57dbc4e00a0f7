/*
 * Copyright 2026 The Evigrid Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "commands.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "evigrid/errors.hpp"
#include "evigrid/eval.hpp"
#include "evigrid/grid_io.hpp"
#include "evigrid/render.hpp"
#include "evigrid/simulator.hpp"
#include "json.hpp"

namespace evigrid::cli {

namespace {

using nlohmann::json;

double number_or(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number()) throw ConfigError(std::string("'") + key + "' must be a number");
  return j.at(key).get<double>();
}

int int_or(const json& j, const char* key, int fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number_integer()) throw ConfigError(std::string("'") + key + "' must be an integer");
  return j.at(key).get<int>();
}

void read_params(const json& doc, PipelineConfig& p) {
  if (doc.contains("fusion")) {
    const json& f = doc.at("fusion");
    p.fusion.unknown_floor = number_or(f, "unknown_floor", p.fusion.unknown_floor);
    p.fusion.tanh_gain = number_or(f, "tanh_gain", p.fusion.tanh_gain);
    p.fusion.accumulation_window = int_or(f, "accumulation_window", p.fusion.accumulation_window);
    if (f.contains("gamma_mode")) p.fusion.gamma_mode = gamma_mode_from_string(f.at("gamma_mode").get<std::string>());
  }
  if (doc.contains("ilm")) {
    const json& f = doc.at("ilm");
    p.ilm.z_min = number_or(f, "z_min", p.ilm.z_min);
    p.ilm.z_max = number_or(f, "z_max", p.ilm.z_max);
    p.ilm.angular_resolution_deg = number_or(f, "angular_resolution_deg", p.ilm.angular_resolution_deg);
    p.ilm.max_range = number_or(f, "max_range", p.ilm.max_range);
    p.ilm.m_occupied = number_or(f, "m_occupied", p.ilm.m_occupied);
    p.ilm.m_free = number_or(f, "m_free", p.ilm.m_free);
  }
  if (doc.contains("irm")) {
    const json& f = doc.at("irm");
    p.irm.history_depth = int_or(f, "history_depth", p.irm.history_depth);
    p.irm.cone_angle_deg = number_or(f, "cone_angle_deg", p.irm.cone_angle_deg);
    p.irm.m_free = number_or(f, "m_free", p.irm.m_free);
    p.irm.m_occupied = number_or(f, "m_occupied", p.irm.m_occupied);
    p.irm.max_range = number_or(f, "max_range", p.irm.max_range);
  }
  if (doc.contains("surrogate")) {
    const json& f = doc.at("surrogate");
    p.surrogate.certainty_cap = number_or(f, "certainty_cap", p.surrogate.certainty_cap);
    p.surrogate.decay_length = number_or(f, "decay_length", p.surrogate.decay_length);
    p.surrogate.occupied_bias = number_or(f, "occupied_bias", p.surrogate.occupied_bias);
    p.surrogate.support_radius = number_or(f, "support_radius", p.surrogate.support_radius);
    p.surrogate.outlier_rate = number_or(f, "outlier_rate", p.surrogate.outlier_rate);
    if (f.contains("rng_seed")) p.surrogate.rng_seed = f.at("rng_seed").get<std::uint64_t>();
  }
}

void validate(const RunConfig& c) {
  if (c.variants.empty()) throw ConfigError("variant list is empty");
  if (c.pipeline.threads < 1) throw ConfigError("threads must be >= 1");
  try {
    c.pipeline.fusion.validate();
    c.pipeline.ilm.validate();
    c.pipeline.irm.validate();
    c.pipeline.surrogate.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

// EVIGRID_THREADS caps the parallelism degree.
int capped_threads(int requested) {
  if (const char* env = std::getenv("EVIGRID_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1 && cap < requested) return cap;
  }
  return requested;
}

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kConfig;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kConfig;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
}

}  // namespace

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open run config '" + path.string() + "'");
  RunConfig c;
  try {
    const json doc = json::parse(in);
    const std::filesystem::path base = path.parent_path();
    const auto resolve = [&](const std::string& p) {
      const std::filesystem::path fp(p);
      return fp.is_absolute() ? fp : base / fp;
    };
    if (!doc.contains("recording")) throw ConfigError("missing key 'recording'");
    c.recording = resolve(doc.at("recording").get<std::string>());
    c.output_dir = resolve(doc.value("output_dir", std::string("out")));
    if (!doc.contains("variants") || doc.at("variants") == "all") {
      c.variants.assign(std::begin(kAllVariants), std::end(kAllVariants));
    } else {
      for (const json& v : doc.at("variants")) c.variants.push_back(variant_from_string(v.get<std::string>()));
    }
    read_params(doc, c.pipeline);
    if (doc.contains("prediction_dir")) c.pipeline.prediction_dir = resolve(doc.at("prediction_dir").get<std::string>());
    c.pipeline.threads = int_or(doc, "threads", 1);
    c.render = doc.value("render", true);
  } catch (const json::exception& e) {
    throw ConfigError("'" + path.string() + "': " + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError("'" + path.string() + "': " + e.what());
  }
  validate(c);
  return c;
}

void apply_overrides(RunConfig& c, const MapOverrides& o) {
  if (o.unknown_floor) c.pipeline.fusion.unknown_floor = *o.unknown_floor;
  if (o.gamma_mode) c.pipeline.fusion.gamma_mode = gamma_mode_from_string(*o.gamma_mode);
  if (!o.variants.empty()) {
    c.variants.clear();
    for (const std::string& v : o.variants) c.variants.push_back(variant_from_string(v));
  }
  if (o.threads) c.pipeline.threads = *o.threads;
  validate(c);
}

std::string config_hash(const RunConfig& c) {
  const PipelineConfig& p = c.pipeline;
  json variants = json::array();
  for (MappingVariant v : c.variants) variants.push_back(std::string(variant_id(v)));
  const json doc = {
      {"variants", variants},
      {"fusion",
       {p.fusion.unknown_floor, p.fusion.tanh_gain, p.fusion.accumulation_window,
        std::string(to_string(p.fusion.gamma_mode))}},
      {"ilm", {p.ilm.z_min, p.ilm.z_max, p.ilm.angular_resolution_deg, p.ilm.max_range, p.ilm.m_occupied, p.ilm.m_free}},
      {"irm", {p.irm.history_depth, p.irm.cone_angle_deg, p.irm.m_free, p.irm.m_occupied, p.irm.max_range}},
      {"surrogate",
       {p.surrogate.certainty_cap, p.surrogate.decay_length, p.surrogate.occupied_bias, p.surrogate.support_radius,
        p.surrogate.outlier_rate, p.surrogate.rng_seed}},
      {"external_predictions", !p.prediction_dir.empty()},
  };
  return fnv1a_hex(doc.dump());
}

int cmd_simulate(const std::filesystem::path& config, const std::filesystem::path& out_dir, std::ostream& out,
                 std::ostream& err) {
  return guarded(err, [&] {
    const ScenarioConfig scenario = load_scenario(config);
    generate_scenario(scenario, out_dir);
    out << "wrote recording to " << out_dir.string() << '\n';
    return kOk;
  });
}

int cmd_map(const std::filesystem::path& run_config, const MapOverrides& overrides, std::ostream& out,
            std::ostream& err) {
  return guarded(err, [&] {
    RunConfig c = load_run_config(run_config);
    apply_overrides(c, overrides);
    c.pipeline.threads = capped_threads(c.pipeline.threads);
    const Recording recording = load_recording(c.recording);
    std::optional<EvidenceGrid> ground_truth;
    if (std::filesystem::exists(c.recording / "ground_truth.evgr")) {
      ground_truth = read_grid(c.recording / "ground_truth.evgr");
    }

    // The reference map always runs alongside; without lidar the world grid
    // takes its place.
    std::vector<MappingVariant> run_list = c.variants;
    const bool has_lidar = std::any_of(recording.scans.begin(), recording.scans.end(),
                                       [](const Scan& s) { return s.kind == SensorKind::kLidar; });
    std::ptrdiff_t reference = -1;
    if (has_lidar) {
      const auto it = std::find(run_list.begin(), run_list.end(), MappingVariant::kRayIlmDempster);
      if (it == run_list.end()) run_list.push_back(MappingVariant::kRayIlmDempster);
      reference = std::find(run_list.begin(), run_list.end(), MappingVariant::kRayIlmDempster) - run_list.begin();
    } else if (!ground_truth) {
      throw ConfigError("recording has neither lidar scans nor a ground-truth grid to evaluate against");
    }

    std::filesystem::create_directories(c.output_dir);
    const std::filesystem::path marker = c.output_dir / "INCOMPLETE";
    { std::ofstream(marker) << "run in progress or failed\n"; }

    const std::string hash = config_hash(c);
    std::vector<EvalReport> reports(c.variants.size());
    for (std::size_t k = 0; k < c.variants.size(); ++k) {
      reports[k].variant = std::string(variant_id(c.variants[k]));
      reports[k].label = std::string(variant_label(c.variants[k]));
      reports[k].config_hash = hash;
    }
    const auto observer = [&](int, std::span<const Mapper> mappers) {
      const EvidenceGrid& ref = reference >= 0 ? mappers[reference].map() : *ground_truth;
      for (std::size_t k = 0; k < c.variants.size(); ++k) reports[k].series.push_back(evaluate(mappers[k].map(), ref));
    };
    const std::vector<Mapper> mappers = run_variants(recording, run_list, c.pipeline, observer);

    for (std::size_t k = 0; k < c.variants.size(); ++k) {
      EvalReport& r = reports[k];
      const std::filesystem::path dir = c.output_dir / r.variant;
      std::filesystem::create_directories(dir);
      const EvidenceGrid& map = mappers[k].map();
      if (!r.series.empty()) r.final_iou = r.series.back();
      else r.final_iou = {100.0, 100.0, 100.0};
      if (ground_truth) r.ground_truth_iou = evaluate(map, *ground_truth);
      write_grid(map, dir / "final.evgr");
      write_report_json(r, dir / "report.json");
      write_report_csv(r, dir / "report.csv");
      if (c.render) render_png(map, dir / "render.png");
    }
    std::filesystem::remove(marker);
    out << comparison_table(reports);
    return kOk;
  });
}

int cmd_compare(const std::vector<std::filesystem::path>& paths, std::ostream& out, std::ostream& err) {
  if (paths.size() < 2) {
    err << "usage: compare needs at least two reports\n";
    return kUsage;
  }
  return guarded(err, [&] {
    std::vector<EvalReport> reports;
    for (const auto& p : paths) reports.push_back(read_report_json(p));
    out << comparison_table(reports);
    return kOk;
  });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Evidential occupancy mapping with deep and geometric inverse sensor models", "evigrid"};
  app.require_subcommand(1);

  std::string sim_config, sim_out;
  CLI::App* simulate = app.add_subcommand("simulate", "Generate a synthetic recording");
  simulate->add_option("config", sim_config, "Scenario JSON")->required();
  simulate->add_option("out", sim_out, "Output recording directory")->required();

  std::string run_config;
  MapOverrides overrides;
  double floor = 0.0;
  std::string gamma;
  int threads = 0;
  CLI::App* map = app.add_subcommand("map", "Run mapping variants and evaluate them");
  map->add_option("run_config", run_config, "Run JSON")->required();
  CLI::Option* floor_opt = map->add_option("--unknown-floor", floor, "Unknown-mass floor");
  CLI::Option* gamma_opt = map->add_option("--gamma-mode", gamma, "paper or exact");
  map->add_option("--variant", overrides.variants, "Variant id (repeatable)");
  CLI::Option* threads_opt = map->add_option("--threads", threads, "Worker threads");

  std::vector<std::string> report_paths;
  CLI::App* compare = app.add_subcommand("compare", "Print a comparison table of reports");
  compare->add_option("reports", report_paths, "Report JSON files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << app.help();
    return kUsage;
  }

  if (simulate->parsed()) return cmd_simulate(sim_config, sim_out, out, err);
  if (map->parsed()) {
    if (*floor_opt) overrides.unknown_floor = floor;
    if (*gamma_opt) overrides.gamma_mode = gamma;
    if (*threads_opt) overrides.threads = threads;
    return cmd_map(run_config, overrides, out, err);
  }
  std::vector<std::filesystem::path> paths(report_paths.begin(), report_paths.end());
  return cmd_compare(paths, out, err);
}

}  // namespace evigrid::cli
