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

#ifndef EVIGRID_TOOLS_COMMANDS_HPP_
#define EVIGRID_TOOLS_COMMANDS_HPP_

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "evigrid/pipeline.hpp"

namespace evigrid::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kConfig = 2,
  kIo = 3,
  kInternal = 4,
};

struct RunConfig {
  std::filesystem::path recording;
  std::filesystem::path output_dir;
  std::vector<MappingVariant> variants;
  PipelineConfig pipeline;
  bool render = true;
};

struct MapOverrides {
  std::optional<double> unknown_floor;
  std::optional<std::string> gamma_mode;
  std::vector<std::string> variants;
  std::optional<int> threads;
};

// Relative paths resolve against the config file's directory. Throws
// ConfigError or IoError.
RunConfig load_run_config(const std::filesystem::path& path);
void apply_overrides(RunConfig& config, const MapOverrides& overrides);

// Hash of everything that determines the maps; excludes paths and threads.
std::string config_hash(const RunConfig& config);

int cmd_simulate(const std::filesystem::path& config, const std::filesystem::path& out_dir, std::ostream& out,
                 std::ostream& err);
int cmd_map(const std::filesystem::path& run_config, const MapOverrides& overrides, std::ostream& out,
            std::ostream& err);
int cmd_compare(const std::vector<std::filesystem::path>& reports, std::ostream& out, std::ostream& err);

// Full command line, argv[0] included.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace evigrid::cli

#endif  // EVIGRID_TOOLS_COMMANDS_HPP_
