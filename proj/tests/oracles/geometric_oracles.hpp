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

#ifndef EVIGRID_TESTS_ORACLES_GEOMETRIC_ORACLES_HPP_
#define EVIGRID_TESTS_ORACLES_GEOMETRIC_ORACLES_HPP_

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <vector>

#include "evigrid/geometric_ism.hpp"
#include "evigrid/raycast.hpp"

// Brute-force per-cell reference implementations of the ray ISMs. They
// share only the slab test and the cone membership predicate with the
// library; traversal, cell enumeration and occlusion are redone by
// exhaustive search.

namespace evigrid::oracle {

inline EvidenceGrid ilm_oracle(const Scan& scan, const RayIlmParams& params, const GridGeometry& g) {
  const Point2 sensor = scan.sensor_pose.translation();
  std::vector<std::uint8_t> detection(g.cell_count(), 0);
  for (const Point3& p : scan.points) {
    if (p.z < params.z_min || p.z > params.z_max) continue;
    if (auto c = g.cell_of(scan.point_in_reference(p))) detection[g.index(c->x, c->y)] = 1;
  }
  std::vector<std::uint8_t> free(g.cell_count(), 0);
  const long rays = std::lround(360.0 / params.angular_resolution_deg);
  const double step = params.angular_resolution_deg * std::numbers::pi / 180.0;
  std::vector<Crossing> crossing(g.cell_count());
  for (long k = 0; k < rays; ++k) {
    const double theta = static_cast<double>(k) * step;
    const Point2 dir{std::cos(theta), std::sin(theta)};
    // Earliest entry into a detection cell along this ray.
    double blocked_at = std::numeric_limits<double>::infinity();
    for (int iy = 0; iy < g.height; ++iy) {
      for (int ix = 0; ix < g.width; ++ix) {
        const std::size_t i = g.index(ix, iy);
        crossing[i] = segment_crossing(g, sensor, dir, {ix, iy});
        if (detection[i] && crossing[i].crosses && crossing[i].t_enter < params.max_range) {
          blocked_at = std::min(blocked_at, crossing[i].t_enter);
        }
      }
    }
    for (std::size_t i = 0; i < g.cell_count(); ++i) {
      const Crossing& c = crossing[i];
      if (!detection[i] && c.crosses && c.t_enter < params.max_range && c.t_enter < blocked_at) free[i] = 1;
    }
  }
  EvidenceGrid out(g);
  for (std::size_t i = 0; i < g.cell_count(); ++i) {
    if (detection[i]) {
      out[i] = occupied_mass(params.m_occupied);
    } else if (free[i]) {
      out[i] = free_mass(params.m_free);
    }
  }
  return out;
}

inline EvidenceGrid irm_oracle(std::span<const Scan> scans, const RayIrmParams& params, const GridGeometry& g) {
  std::vector<Cone> cones;
  const double half = 0.5 * params.cone_angle_deg * std::numbers::pi / 180.0;
  for (const Scan& s : scans) {
    const Point2 apex = s.sensor_pose.translation();
    for (const Point3& p : s.points) {
      const Point2 q = s.point_in_reference(p);
      const double r = std::hypot(q.x - apex.x, q.y - apex.y);
      if (r > 0.0 && r <= params.max_range) cones.push_back({apex, std::atan2(q.y - apex.y, q.x - apex.x), half, r});
    }
  }
  // A cell is an occluder when its center is within half a cell diagonal of
  // the far band (radially and angularly).
  const double slack = g.resolution * std::numbers::sqrt2 / 2.0;
  std::vector<std::uint8_t> occluder(g.cell_count(), 0);
  std::vector<CellIndex> occluders;
  for (const Cone& c : cones) {
    for (int iy = 0; iy < g.height; ++iy) {
      for (int ix = 0; ix < g.width; ++ix) {
        const Point2 center = g.center(ix, iy);
        const double d = std::hypot(center.x - c.apex.x, center.y - c.apex.y);
        if (!(d + slack > c.range - g.resolution && d - slack <= c.range)) continue;
        if (d > slack) {
          const double off = std::atan2(center.y - c.apex.y, center.x - c.apex.x) - c.bearing;
          if (std::abs(normalize_angle(off)) > c.half_angle + std::asin(slack / d)) continue;
        }
        if (!occluder[g.index(ix, iy)]) {
          occluder[g.index(ix, iy)] = 1;
          occluders.push_back({ix, iy});
        }
      }
    }
  }
  EvidenceGrid out(g);
  for (const Cone& c : cones) {
    for (int iy = 0; iy < g.height; ++iy) {
      for (int ix = 0; ix < g.width; ++ix) {
        const std::size_t i = g.index(ix, iy);
        const Point2 center = g.center(ix, iy);
        if (occluder[i] || !cone_contains(c, center)) continue;
        bool visible = true;
        for (const CellIndex& o : occluders) {
          const Crossing x = segment_crossing(g, c.apex, center - c.apex, o);
          if (x.crosses && x.t_enter < 1.0) {
            visible = false;
            break;
          }
        }
        if (visible) out[i] = free_mass(params.m_free);
      }
    }
  }
  for (const Scan& s : scans) {
    const Point2 apex = s.sensor_pose.translation();
    for (const Point3& p : s.points) {
      const Point2 q = s.point_in_reference(p);
      const double r = std::hypot(q.x - apex.x, q.y - apex.y);
      if (!(r > 0.0) || r > params.max_range) continue;
      if (auto c = g.cell_of(q)) out.at(c->x, c->y) = occupied_mass(params.m_occupied);
    }
  }
  return out;
}

// Random scene on a square grid: sensor strictly inside, detections both in
// and outside the grid, some sharing a bearing.
struct RandomScene {
  GridGeometry geometry;
  Scan lidar;
  std::vector<Scan> radar;
};

inline RandomScene random_scene(std::uint64_t seed, int size) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  RandomScene s;
  s.geometry = GridGeometry::centered(size, size, 0.25);
  const double half = 0.5 * size * 0.25;
  const auto inside = [&] { return Point2{(unit(rng) * 1.6 - 0.8) * half, (unit(rng) * 1.6 - 0.8) * half}; };

  const Point2 lp = inside();
  s.lidar.kind = SensorKind::kLidar;
  s.lidar.sensor_pose = Pose2D(lp.x, lp.y, (unit(rng) * 2.0 - 1.0) * std::numbers::pi);
  const int lidar_points = 1 + static_cast<int>(unit(rng) * 25);
  for (int k = 0; k < lidar_points; ++k) {
    const double b = unit(rng) * 2.0 * std::numbers::pi;
    const double r = 0.3 + unit(rng) * 1.3 * half;
    const double z = unit(rng) < 0.15 ? 0.1 : 1.0;
    s.lidar.points.push_back({r * std::cos(b), r * std::sin(b), z});
  }

  const int radar_scans = 1 + static_cast<int>(unit(rng) * 3);
  for (int n = 0; n < radar_scans; ++n) {
    Scan scan;
    scan.kind = SensorKind::kRadar;
    const Point2 p = inside();
    scan.sensor_pose = Pose2D(p.x, p.y, (unit(rng) * 2.0 - 1.0) * std::numbers::pi);
    const int points = 1 + static_cast<int>(unit(rng) * 8);
    for (int k = 0; k < points; ++k) {
      const double b = (unit(rng) - 0.5) * std::numbers::pi;
      const double r = 0.5 + unit(rng) * 1.2 * half;
      scan.points.push_back({r * std::cos(b), r * std::sin(b), 0.5});
      if (unit(rng) < 0.3) {
        const double r2 = r * (0.3 + 0.6 * unit(rng));
        scan.points.push_back({r2 * std::cos(b), r2 * std::sin(b), 0.5});
      }
    }
    s.radar.push_back(std::move(scan));
  }
  return s;
}

}  // namespace evigrid::oracle

#endif  // EVIGRID_TESTS_ORACLES_GEOMETRIC_ORACLES_HPP_
