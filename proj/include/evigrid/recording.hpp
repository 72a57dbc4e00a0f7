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

#ifndef EVIGRID_RECORDING_HPP_
#define EVIGRID_RECORDING_HPP_

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "evigrid/grid.hpp"
#include "evigrid/world.hpp"

namespace evigrid {

struct SensorInfo {
  int id = 0;
  SensorKind kind = SensorKind::kLidar;
  Pose2D extrinsic;  // sensor in vehicle frame
};

struct RecordingMeta {
  GridGeometry grid;       // per-scan ISM grid, vehicle frame
  GridGeometry map_grid;   // map frame
  Pose2D map_in_world;     // map frame = first vehicle pose
  std::vector<SensorInfo> sensors;
  std::optional<World> world;

  const SensorInfo& sensor(int id) const;
};

// Scans hold sensor poses in the world frame, sorted by timestamp.
struct Recording {
  RecordingMeta meta;
  std::vector<Scan> scans;
};

struct Epoch {
  double timestamp = 0.0;
  std::vector<Scan> scans;
};

// Groups consecutive scans sharing a timestamp.
std::vector<Epoch> group_epochs(std::span<const Scan> scans);

// Vehicle pose in the world from a scan taken by `sensor`.
Pose2D vehicle_pose(const Scan& scan, const SensorInfo& sensor);

std::string format_double(double v);

void save_recording(const Recording& recording, const std::filesystem::path& dir);

// Throws IoError on missing files and malformed rows, with the file name and
// line number.
Recording load_recording(const std::filesystem::path& dir);

}  // namespace evigrid

#endif  // EVIGRID_RECORDING_HPP_
