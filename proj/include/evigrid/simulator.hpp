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

#ifndef EVIGRID_SIMULATOR_HPP_
#define EVIGRID_SIMULATOR_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "evigrid/grid.hpp"
#include "evigrid/world.hpp"

namespace evigrid {

struct RadarNoiseModel {
  double detection_probability = 1.0;
  double range_sigma = 0.0;
  double bearing_sigma_deg = 0.0;
  double ghost_rate = 0.0;    // expected multipath ghosts per scan
  double clutter_rate = 0.0;  // expected uniform false detections per scan

  void validate() const;
};

struct LidarSensorConfig {
  int id = 0;
  Pose2D extrinsic;  // sensor in vehicle frame
  int beams = 1800;
  double max_range = 30.0;
  double z = 1.0;
};

struct RadarSensorConfig {
  int id = 1;
  Pose2D extrinsic;
  double fov_deg = 120.0;
  int beams = 120;
  double max_range = 20.0;
  RadarNoiseModel noise;

  void validate() const;
};

// Exact first intersections on `beams` evenly spaced bearings over the full
// circle; beams that hit nothing within max_range produce no point. Points
// are in the sensor frame. Throws std::invalid_argument when the sensor lies
// inside an obstacle.
Scan simulate_lidar(const World& world, const Pose2D& sensor_pose, int beams, double max_range,
                    double z = 1.0);

// Visible surface points on `beams` bearings across the field of view,
// each kept with detection_probability and perturbed by range and bearing
// noise. A Poisson number of single-bounce ghosts is appended: the beam of a
// true return is mirrored off the hit edge, and the ghost appears along the
// original bearing at the total path length. Uniform clutter follows.
Scan simulate_radar(const World& world, const Pose2D& sensor_pose, const RadarSensorConfig& config,
                    std::mt19937_64& rng);

struct TrajectoryConfig {
  std::vector<Point2> waypoints;
  int steps = 100;
  double scan_rate = 10.0;  // Hz
  // Fixed vehicle heading; when unset the heading follows the path.
  std::optional<double> heading;
};

struct ScenarioConfig {
  std::uint64_t seed = 0;
  World world;
  TrajectoryConfig trajectory;
  GridGeometry grid = GridGeometry::bird_eye_default();  // per-scan ISM grid, vehicle frame
  GridGeometry map_grid = GridGeometry::centered(768, 768, 40.0 / 512.0, "map");
  std::optional<LidarSensorConfig> lidar = LidarSensorConfig{};
  std::vector<RadarSensorConfig> radars;

  // Throws ConfigError.
  void validate() const;
};

// Parses the scenario JSON document. Throws ConfigError on schema errors.
ScenarioConfig parse_scenario(const std::string& json_text);
ScenarioConfig load_scenario(const std::filesystem::path& path);

// Piecewise-linear constant-speed vehicle poses, one per step.
std::vector<Pose2D> trajectory_poses(const TrajectoryConfig& trajectory);

// Ground-truth occupancy of the map grid, whose frame is `map_in_world`:
// cells whose center lies in an obstacle are [0, 1, 0], the rest [1, 0, 0].
EvidenceGrid ground_truth_grid(const World& world, const Pose2D& map_in_world,
                               const GridGeometry& geometry);

// Writes scans.csv, meta.json and ground_truth.evgr into `out_dir`.
// Throws ConfigError for infeasible trajectories and IoError on write
// failures.
void generate_scenario(const ScenarioConfig& config, const std::filesystem::path& out_dir);

}  // namespace evigrid

#endif  // EVIGRID_SIMULATOR_HPP_
