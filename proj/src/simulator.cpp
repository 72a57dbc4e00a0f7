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

#include "evigrid/simulator.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

#include "evigrid/errors.hpp"
#include "evigrid/grid_io.hpp"
#include "evigrid/recording.hpp"
#include "json_io.hpp"

namespace evigrid {

namespace {

using json_io::json;

constexpr double kDeg = std::numbers::pi / 180.0;

Point2 unit(double angle) { return {std::cos(angle), std::sin(angle)}; }

void require_free(const World& world, const Pose2D& pose) {
  if (world.occupied_at(pose.translation())) {
    throw std::invalid_argument("sensor pose (" + format_double(pose.x()) + ", " + format_double(pose.y()) +
                                ") lies inside an obstacle");
  }
}

bool segments_intersect(Point2 a, Point2 b, Point2 c, Point2 d) {
  const double d1 = cross(b - a, c - a);
  const double d2 = cross(b - a, d - a);
  const double d3 = cross(d - c, a - c);
  const double d4 = cross(d - c, b - c);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) {
    return true;
  }
  const auto on_segment = [](Point2 p, Point2 q, Point2 r) {
    return std::min(p.x, q.x) <= r.x && r.x <= std::max(p.x, q.x) && std::min(p.y, q.y) <= r.y &&
           r.y <= std::max(p.y, q.y);
  };
  return (d1 == 0 && on_segment(a, b, c)) || (d2 == 0 && on_segment(a, b, d)) ||
         (d3 == 0 && on_segment(c, d, a)) || (d4 == 0 && on_segment(c, d, b));
}

bool segment_hits_polygon(Point2 a, Point2 b, const ConvexPolygon& poly) {
  if (poly.contains(a) || poly.contains(b)) return true;
  const auto& v = poly.vertices();
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (segments_intersect(a, b, v[i], v[(i + 1) % v.size()])) return true;
  }
  return false;
}

RadarNoiseModel noise_from(const json& j, const std::string& where) {
  RadarNoiseModel n;
  n.detection_probability = json_io::get_number_or(j, "detection_probability", n.detection_probability, where);
  n.range_sigma = json_io::get_number_or(j, "range_sigma", n.range_sigma, where);
  n.bearing_sigma_deg = json_io::get_number_or(j, "bearing_sigma_deg", n.bearing_sigma_deg, where);
  n.ghost_rate = json_io::get_number_or(j, "ghost_rate", n.ghost_rate, where);
  n.clutter_rate = json_io::get_number_or(j, "clutter_rate", n.clutter_rate, where);
  return n;
}

}  // namespace

void RadarNoiseModel::validate() const {
  if (!(detection_probability >= 0.0 && detection_probability <= 1.0)) {
    throw std::invalid_argument("detection_probability must lie in [0, 1]");
  }
  if (!(range_sigma >= 0.0) || !(bearing_sigma_deg >= 0.0)) {
    throw std::invalid_argument("noise sigmas must be non-negative");
  }
  if (!(ghost_rate >= 0.0) || !(clutter_rate >= 0.0)) {
    throw std::invalid_argument("ghost and clutter rates must be non-negative");
  }
}

void RadarSensorConfig::validate() const {
  noise.validate();
  if (!(fov_deg > 0.0 && fov_deg <= 360.0)) throw std::invalid_argument("radar fov_deg must lie in (0, 360]");
  if (beams < 1) throw std::invalid_argument("radar beams must be >= 1");
  if (!(max_range > 0.0)) throw std::invalid_argument("radar max_range must be positive");
}

Scan simulate_lidar(const World& world, const Pose2D& sensor_pose, int beams, double max_range, double z) {
  require_free(world, sensor_pose);
  Scan scan;
  scan.kind = SensorKind::kLidar;
  scan.sensor_pose = sensor_pose;
  const Point2 origin = sensor_pose.translation();
  for (int k = 0; k < beams; ++k) {
    const double bearing = 2.0 * std::numbers::pi * k / beams;
    const auto hit = world.cast_ray(origin, unit(sensor_pose.theta() + bearing), max_range);
    if (!hit) continue;
    const Point2 p = hit->range * unit(bearing);
    scan.points.push_back({p.x, p.y, z});
  }
  return scan;
}

Scan simulate_radar(const World& world, const Pose2D& sensor_pose, const RadarSensorConfig& config,
                    std::mt19937_64& rng) {
  config.validate();
  require_free(world, sensor_pose);
  const RadarNoiseModel& noise = config.noise;
  constexpr double kZ = 0.5;
  Scan scan;
  scan.kind = SensorKind::kRadar;
  scan.sensor_id = config.id;
  scan.sensor_pose = sensor_pose;

  const Point2 origin = sensor_pose.translation();
  const double fov = config.fov_deg * kDeg;
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);

  struct TrueHit {
    double bearing;
    RayHit hit;
  };
  std::vector<TrueHit> hits;
  for (int k = 0; k < config.beams; ++k) {
    const double bearing = -0.5 * fov + (k + 0.5) * fov / config.beams;
    const auto hit = world.cast_ray(origin, unit(sensor_pose.theta() + bearing), config.max_range);
    if (!hit) continue;
    hits.push_back({bearing, *hit});
    if (noise.detection_probability < 1.0 && !(uniform(rng) < noise.detection_probability)) continue;
    double r = hit->range;
    double b = bearing;
    if (noise.range_sigma > 0.0) r += noise.range_sigma * gauss(rng);
    if (noise.bearing_sigma_deg > 0.0) b += noise.bearing_sigma_deg * kDeg * gauss(rng);
    if (!(r > 0.0)) continue;
    const Point2 p = r * unit(b);
    scan.points.push_back({p.x, p.y, kZ});
  }

  if (noise.ghost_rate > 0.0) {
    const int ghosts = std::poisson_distribution<int>(noise.ghost_rate)(rng);
    for (int g = 0; g < ghosts && !hits.empty(); ++g) {
      const std::size_t pick = std::uniform_int_distribution<std::size_t>(0, hits.size() - 1)(rng);
      const TrueHit& h = hits[pick];
      const Point2 d = unit(sensor_pose.theta() + h.bearing);
      const Point2 n = h.hit.edge_normal;
      const Point2 mirrored = d - 2.0 * dot(d, n) * n;
      const Point2 start = h.hit.point + 1e-9 * mirrored;
      const auto bounce = world.cast_ray(start, mirrored, config.max_range - h.hit.range);
      if (!bounce) continue;
      const Point2 p = (h.hit.range + bounce->range) * unit(h.bearing);
      scan.points.push_back({p.x, p.y, kZ});
    }
  }

  if (noise.clutter_rate > 0.0) {
    const int clutter = std::poisson_distribution<int>(noise.clutter_rate)(rng);
    for (int c = 0; c < clutter; ++c) {
      const double b = -0.5 * fov + fov * uniform(rng);
      const double r = config.max_range * (1.0 - uniform(rng));
      const Point2 p = r * unit(b);
      scan.points.push_back({p.x, p.y, kZ});
    }
  }
  return scan;
}

void ScenarioConfig::validate() const {
  if (trajectory.waypoints.empty()) throw ConfigError("trajectory.waypoints: at least one waypoint is required");
  if (trajectory.steps < 1) throw ConfigError("trajectory.steps must be >= 1");
  if (!(trajectory.scan_rate > 0.0)) throw ConfigError("trajectory.scan_rate must be positive");
  if (!(grid.resolution > 0.0) || !(map_grid.resolution > 0.0)) throw ConfigError("grid resolution must be positive");
  world.validate(map_grid.resolution * map_grid.resolution);
  std::set<int> ids;
  if (lidar) {
    if (lidar->beams < 1) throw ConfigError("lidar.beams must be >= 1");
    if (!(lidar->max_range > 0.0)) throw ConfigError("lidar.max_range must be positive");
    ids.insert(lidar->id);
  }
  for (const RadarSensorConfig& r : radars) {
    try {
      r.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError("radar " + std::to_string(r.id) + ": " + e.what());
    }
    if (!ids.insert(r.id).second) throw ConfigError("duplicate sensor id " + std::to_string(r.id));
  }
  if (ids.empty()) throw ConfigError("scenario has no sensors");
}

ScenarioConfig parse_scenario(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("scenario is not valid JSON: ") + e.what());
  }
  ScenarioConfig cfg;
  try {
    if (doc.contains("seed")) cfg.seed = doc.at("seed").get<std::uint64_t>();
    cfg.world = json_io::world_from(json_io::require(doc, "world", "scenario"), "world");

    const json& traj = json_io::require(doc, "trajectory", "scenario");
    for (const json& w : json_io::require(traj, "waypoints", "trajectory")) {
      cfg.trajectory.waypoints.push_back(json_io::point_from(w, "trajectory.waypoints"));
    }
    cfg.trajectory.steps = json_io::get_int_or(traj, "steps", cfg.trajectory.steps, "trajectory");
    cfg.trajectory.scan_rate = json_io::get_number_or(traj, "scan_rate", cfg.trajectory.scan_rate, "trajectory");
    if (traj.contains("heading") && !traj.at("heading").is_null()) {
      cfg.trajectory.heading = json_io::get_number(traj, "heading", "trajectory");
    }

    if (doc.contains("grid")) cfg.grid = json_io::geometry_from(doc.at("grid"), "vehicle", "grid");
    if (doc.contains("map_grid")) cfg.map_grid = json_io::geometry_from(doc.at("map_grid"), "map", "map_grid");

    if (doc.contains("lidar")) {
      const json& l = doc.at("lidar");
      if (l.is_null()) {
        cfg.lidar.reset();
      } else {
        LidarSensorConfig lidar;
        lidar.id = json_io::get_int_or(l, "id", lidar.id, "lidar");
        lidar.beams = json_io::get_int_or(l, "beams", lidar.beams, "lidar");
        lidar.max_range = json_io::get_number_or(l, "max_range", lidar.max_range, "lidar");
        lidar.z = json_io::get_number_or(l, "z", lidar.z, "lidar");
        if (l.contains("extrinsic")) lidar.extrinsic = json_io::pose_from(l.at("extrinsic"), "lidar.extrinsic");
        cfg.lidar = lidar;
      }
    }
    if (doc.contains("radars")) {
      const json& list = doc.at("radars");
      if (!list.is_array()) throw ConfigError("radars: expected an array");
      for (std::size_t k = 0; k < list.size(); ++k) {
        const std::string where = "radars[" + std::to_string(k) + "]";
        const json& r = list[k];
        RadarSensorConfig radar;
        radar.id = json_io::get_int_or(r, "id", static_cast<int>(k) + 1, where);
        radar.fov_deg = json_io::get_number_or(r, "fov_deg", radar.fov_deg, where);
        radar.beams = json_io::get_int_or(r, "beams", radar.beams, where);
        radar.max_range = json_io::get_number_or(r, "max_range", radar.max_range, where);
        if (r.contains("extrinsic")) radar.extrinsic = json_io::pose_from(r.at("extrinsic"), where + ".extrinsic");
        if (r.contains("noise")) radar.noise = noise_from(r.at("noise"), where + ".noise");
        cfg.radars.push_back(radar);
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("scenario: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open scenario config '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_scenario(buf.str());
  } catch (const ConfigError& e) {
    throw ConfigError("'" + path.string() + "': " + e.what());
  }
}

std::vector<Pose2D> trajectory_poses(const TrajectoryConfig& trajectory) {
  const auto& w = trajectory.waypoints;
  if (w.empty()) throw ConfigError("trajectory.waypoints: at least one waypoint is required");
  std::vector<double> cumulative{0.0};
  for (std::size_t i = 1; i < w.size(); ++i) cumulative.push_back(cumulative.back() + norm(w[i] - w[i - 1]));
  const double total = cumulative.back();

  std::vector<Pose2D> poses;
  poses.reserve(trajectory.steps);
  std::size_t seg = 0;
  for (int i = 0; i < trajectory.steps; ++i) {
    const double s = trajectory.steps == 1 ? 0.0 : total * i / (trajectory.steps - 1);
    while (seg + 2 < w.size() && s > cumulative[seg + 1]) ++seg;
    // Skip degenerate segments so the heading is always defined.
    std::size_t head = seg;
    while (head + 2 < w.size() && cumulative[head + 1] == cumulative[head]) ++head;
    Point2 p = w.front();
    double heading = 0.0;
    if (w.size() > 1) {
      const double len = cumulative[seg + 1] - cumulative[seg];
      const double frac = len > 0.0 ? std::clamp((s - cumulative[seg]) / len, 0.0, 1.0) : 0.0;
      p = w[seg] + frac * (w[seg + 1] - w[seg]);
      const Point2 d = w[head + 1] - w[head];
      if (d.x != 0.0 || d.y != 0.0) heading = std::atan2(d.y, d.x);
    }
    if (trajectory.heading) heading = *trajectory.heading;
    poses.emplace_back(p.x, p.y, heading);
  }
  return poses;
}

EvidenceGrid ground_truth_grid(const World& world, const Pose2D& map_in_world, const GridGeometry& geometry) {
  EvidenceGrid grid(geometry);
  const MassFunction free = MassFunction::unchecked(1.0, 0.0, 0.0);
  const MassFunction occupied = MassFunction::unchecked(0.0, 1.0, 0.0);
  for (int iy = 0; iy < geometry.height; ++iy) {
    for (int ix = 0; ix < geometry.width; ++ix) {
      grid.at(ix, iy) = world.occupied_at(map_in_world.apply(geometry.center(ix, iy))) ? occupied : free;
    }
  }
  return grid;
}

void generate_scenario(const ScenarioConfig& config, const std::filesystem::path& out_dir) {
  config.validate();
  const auto& w = config.trajectory.waypoints;
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::size_t k = 0; k < config.world.obstacles().size(); ++k) {
      const Point2 b = i + 1 < w.size() ? w[i + 1] : w[i];
      if (segment_hits_polygon(w[i], b, config.world.obstacles()[k])) {
        throw ConfigError("trajectory segment " + std::to_string(i) + " passes through obstacle " +
                          std::to_string(k));
      }
    }
  }

  const std::vector<Pose2D> poses = trajectory_poses(config.trajectory);
  Recording rec;
  rec.meta.grid = config.grid;
  rec.meta.grid.frame_id = "vehicle";
  rec.meta.map_grid = config.map_grid;
  rec.meta.map_grid.frame_id = "map";
  rec.meta.map_in_world = poses.front();
  rec.meta.world = config.world;
  if (config.lidar) rec.meta.sensors.push_back({config.lidar->id, SensorKind::kLidar, config.lidar->extrinsic});
  for (const RadarSensorConfig& r : config.radars) rec.meta.sensors.push_back({r.id, SensorKind::kRadar, r.extrinsic});

  std::mt19937_64 rng(config.seed);
  for (std::size_t i = 0; i < poses.size(); ++i) {
    const double t = static_cast<double>(i) / config.trajectory.scan_rate;
    try {
      if (config.lidar) {
        Scan scan = simulate_lidar(config.world, poses[i].compose(config.lidar->extrinsic), config.lidar->beams,
                                   config.lidar->max_range, config.lidar->z);
        scan.timestamp = t;
        scan.sensor_id = config.lidar->id;
        rec.scans.push_back(std::move(scan));
      }
      for (const RadarSensorConfig& r : config.radars) {
        Scan scan = simulate_radar(config.world, poses[i].compose(r.extrinsic), r, rng);
        scan.timestamp = t;
        rec.scans.push_back(std::move(scan));
      }
    } catch (const std::invalid_argument& e) {
      throw ConfigError("trajectory step " + std::to_string(i) + ": " + e.what());
    }
  }

  save_recording(rec, out_dir);
  write_grid(ground_truth_grid(config.world, rec.meta.map_in_world, rec.meta.map_grid),
             out_dir / "ground_truth.evgr");
}

}  // namespace evigrid
