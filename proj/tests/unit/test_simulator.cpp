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

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "doctest.h"
#include "evigrid/errors.hpp"
#include "evigrid/grid_io.hpp"
#include "evigrid/recording.hpp"
#include "evigrid/simulator.hpp"
#include "test_support.hpp"

namespace evigrid {
namespace {

using testing::ScratchDir;
using testing::slurp;

double distance_to_segment(Point2 p, Point2 a, Point2 b) {
  const Point2 ab = b - a;
  const double t = std::clamp(dot(p - a, ab) / dot(ab, ab), 0.0, 1.0);
  return norm(p - (a + t * ab));
}

double distance_to_boundary(const World& w, Point2 p) {
  double best = std::numeric_limits<double>::infinity();
  for (const ConvexPolygon& poly : w.obstacles()) {
    const auto& v = poly.vertices();
    for (std::size_t i = 0; i < v.size(); ++i) best = std::min(best, distance_to_segment(p, v[i], v[(i + 1) % v.size()]));
  }
  return best;
}

World two_wall_world() {
  return World({-30, -30}, {30, 30},
               {ConvexPolygon({{-20, 5}, {20, 5}, {20, 6}, {-20, 6}}),
                ConvexPolygon({{-20, -6}, {20, -6}, {20, -5}, {-20, -5}}),
                ConvexPolygon({{8, -2}, {9, -2}, {9, 2}, {8, 2}})});
}

const char* kCorridor = R"({
  "seed": 3,
  "world": {"extent": [[-30, -20], [40, 20]],
            "obstacles": [[[2, 3], [30, 3], [30, 4], [2, 4]], [[2, -4], [30, -4], [30, -3], [2, -3]]]},
  "trajectory": {"waypoints": [[0, 0], [20, 0]], "steps": 100},
  "grid": {"width": 128, "height": 128, "resolution": 0.25},
  "map_grid": {"width": 256, "height": 128, "resolution": 0.25, "origin": [-12, -16]},
  "lidar": {"beams": 360},
  "radars": [{"id": 1, "noise": {"detection_probability": 0.8, "range_sigma": 0.05,
                                 "ghost_rate": 0.5, "clutter_rate": 0.5}}]
})";

TEST_CASE("polygon and ray casting basics") {
  CHECK_THROWS_AS(ConvexPolygon({{0, 0}, {1, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(ConvexPolygon({{0, 0}, {2, 0}, {1, 0.5}, {2, 2}, {0, 2}}), std::invalid_argument);
  const ConvexPolygon cw({{0, 0}, {0, 1}, {1, 1}, {1, 0}});
  CHECK(cw.area() == doctest::Approx(1.0));
  CHECK(cw.contains({1.0, 0.5}));
  const World w = two_wall_world();
  const auto hit = w.cast_ray({0, 0}, {0, 1}, 10.0);
  REQUIRE(hit.has_value());
  CHECK(hit->range == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(hit->edge_normal.y == doctest::Approx(-1.0));
  CHECK_FALSE(w.cast_ray({0, 0}, {0, 1}, 4.9).has_value());
}

TEST_CASE("lidar detections lie on obstacle boundaries") {
  const World w = two_wall_world();
  const Pose2D pose(1.3, 0.4, 0.3);
  const Scan scan = simulate_lidar(w, pose, 720, 30.0);
  CHECK(scan.points.size() > 500);
  for (const Point3& p : scan.points) REQUIRE(distance_to_boundary(w, scan.point_in_reference(p)) < 1e-9);
  CHECK_THROWS_AS(simulate_lidar(w, Pose2D(8.5, 0.0, 0.0), 10, 30.0), std::invalid_argument);
}

TEST_CASE("noise-free radar detections are visible surface points") {
  const World w = two_wall_world();
  RadarSensorConfig cfg;
  cfg.max_range = 15.0;
  std::mt19937_64 rng(1);
  const Pose2D pose(0.0, 0.0, 0.2);
  const Scan scan = simulate_radar(w, pose, cfg, rng);
  CHECK(scan.points.size() > 100);
  for (const Point3& p : scan.points) {
    const Point2 q = scan.point_in_reference(p);
    const Point2 d = q - pose.translation();
    const double r = norm(d);
    const auto hit = w.cast_ray(pose.translation(), (1.0 / r) * d, cfg.max_range);
    REQUIRE(hit.has_value());
    REQUIRE(std::abs(hit->range - r) < 1e-9);
    REQUIRE(std::abs(std::atan2(p.y, p.x)) <= 60.0 * std::numbers::pi / 180.0 + 1e-12);
  }
}

TEST_CASE("ghosts appear behind the visible surface") {
  const World w = two_wall_world();
  RadarSensorConfig cfg;
  cfg.max_range = 40.0;
  cfg.noise.ghost_rate = 2.0;
  int ghosts = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    std::mt19937_64 rng(seed);
    const Pose2D pose(0.0, 0.0, std::numbers::pi / 2);
    const Scan scan = simulate_radar(w, pose, cfg, rng);
    for (const Point3& p : scan.points) {
      const Point2 d = scan.point_in_reference(p) - pose.translation();
      const double r = norm(d);
      const auto hit = w.cast_ray(pose.translation(), (1.0 / r) * d, cfg.max_range);
      if (hit && r > hit->range + 1e-6) {
        ++ghosts;
        REQUIRE(r <= cfg.max_range + 1e-9);
      }
    }
  }
  CHECK(ghosts > 50);
}

TEST_CASE("noise model validation") {
  RadarNoiseModel n;
  n.detection_probability = 1.2;
  CHECK_THROWS_AS(n.validate(), std::invalid_argument);
  n = {};
  n.range_sigma = -1.0;
  CHECK_THROWS_AS(n.validate(), std::invalid_argument);
}

TEST_CASE("scenario parsing errors") {
  CHECK_THROWS_AS(parse_scenario("{"), ConfigError);
  CHECK_THROWS_AS(parse_scenario(R"({"world": {"extent": [[0,0],[1,1]], "obstacles": []},
                                     "trajectory": {"waypoints": []}})"),
                  ConfigError);
  CHECK_THROWS_AS(parse_scenario(R"({"trajectory": {"waypoints": [[0,0]]}})"), ConfigError);
  ScenarioConfig blocked = parse_scenario(kCorridor);
  blocked.trajectory.waypoints = {{10, 0}, {10, 10}};
  ScratchDir dir("sim_blocked");
  CHECK_THROWS_AS(generate_scenario(blocked, dir.path()), ConfigError);
}

TEST_CASE("trajectory poses") {
  TrajectoryConfig t;
  t.waypoints = {{0, 0}, {10, 0}, {10, 10}};
  t.steps = 21;
  const auto poses = trajectory_poses(t);
  REQUIRE(poses.size() == 21);
  CHECK(poses[5].x() == doctest::Approx(5.0));
  CHECK(poses[5].theta() == 0.0);
  CHECK(poses[15].y() == doctest::Approx(5.0));
  CHECK(poses[15].theta() == doctest::Approx(std::numbers::pi / 2));
  CHECK(poses[20].y() == doctest::Approx(10.0));
  t.heading = 1.0;
  CHECK(trajectory_poses(t)[3].theta() == 1.0);
}

TEST_CASE("corridor recording: counts, ordering, determinism") {
  const ScenarioConfig cfg = parse_scenario(kCorridor);
  ScratchDir a("sim_a"), b("sim_b");
  generate_scenario(cfg, a.path());
  generate_scenario(cfg, b.path());
  for (const char* f : {"scans.csv", "meta.json", "ground_truth.evgr"}) {
    CHECK(slurp(a.path() / f) == slurp(b.path() / f));
  }

  const Recording rec = load_recording(a.path());
  int lidar = 0, radar = 0;
  double last = -1.0;
  bool monotone = true;
  for (const Scan& s : rec.scans) {
    (s.kind == SensorKind::kLidar ? lidar : radar)++;
    monotone = monotone && s.timestamp >= last;
    last = s.timestamp;
  }
  CHECK(lidar == 100);
  CHECK(radar == 100);
  CHECK(monotone);
  CHECK(group_epochs(rec.scans).size() == 100);

  ScenarioConfig other = cfg;
  other.seed = 4;
  ScratchDir c("sim_c");
  generate_scenario(other, c.path());
  CHECK(slurp(a.path() / "scans.csv") != slurp(c.path() / "scans.csv"));
}

TEST_CASE("ground truth agrees with point-in-polygon") {
  const World w = two_wall_world();
  const Pose2D map_in_world(1.0, -0.5, 0.3);
  const GridGeometry g = GridGeometry::centered(96, 96, 0.25);
  const EvidenceGrid gt = ground_truth_grid(w, map_in_world, g);
  int occupied = 0;
  for (int iy = 0; iy < g.height; ++iy) {
    for (int ix = 0; ix < g.width; ++ix) {
      const Point2 p = map_in_world.apply(g.center(ix, iy));
      bool inside = false;
      for (const auto& poly : w.obstacles()) inside = inside || poly.contains(p);
      REQUIRE(gt.at(ix, iy) == (inside ? MassFunction(0, 1, 0) : MassFunction(1, 0, 0)));
      occupied += inside;
    }
  }
  CHECK(occupied > 100);
}

}  // namespace
}  // namespace evigrid
