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

#include "evigrid/geometric_ism.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "evigrid/raycast.hpp"

namespace evigrid {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

bool open_unit(double m) { return m > 0.0 && m < 1.0; }

std::array<Point2, 3> bounding_triangle(const Cone& cone) {
  const double stretch = cone.range / std::cos(cone.half_angle);
  const Point2 right = cone.apex + stretch * Point2{std::cos(cone.bearing - cone.half_angle),
                                                    std::sin(cone.bearing - cone.half_angle)};
  const Point2 left = cone.apex + stretch * Point2{std::cos(cone.bearing + cone.half_angle),
                                                   std::sin(cone.bearing + cone.half_angle)};
  return {cone.apex, right, left};
}

// Calls fn(ix, iy) for every cell whose square, grown by `margin` cells on
// each side, may intersect the triangle. The x-extent of a convex polygon
// over a horizontal strip is reached on the strip borders or at vertices
// inside the strip.
template <typename Fn>
void for_each_triangle_cell(const GridGeometry& g, const std::array<Point2, 3>& tri, int margin, Fn&& fn) {
  const double y_lo = std::min({tri[0].y, tri[1].y, tri[2].y});
  const double y_hi = std::max({tri[0].y, tri[1].y, tri[2].y});
  const int row_lo = std::max(0, static_cast<int>(std::floor((y_lo - g.origin_y) / g.resolution)) - margin - 1);
  const int row_hi =
      std::min(g.height - 1, static_cast<int>(std::floor((y_hi - g.origin_y) / g.resolution)) + margin + 1);

  const auto widen = [&](double y, double& x_lo, double& x_hi) {
    for (int e = 0; e < 3; ++e) {
      const Point2 a = tri[e];
      const Point2 b = tri[(e + 1) % 3];
      if (y < std::min(a.y, b.y) || y > std::max(a.y, b.y)) continue;
      if (a.y == b.y) {
        x_lo = std::min({x_lo, a.x, b.x});
        x_hi = std::max({x_hi, a.x, b.x});
        continue;
      }
      const double x = a.x + (b.x - a.x) * (y - a.y) / (b.y - a.y);
      x_lo = std::min(x_lo, x);
      x_hi = std::max(x_hi, x);
    }
  };

  for (int iy = row_lo; iy <= row_hi; ++iy) {
    const double s_lo = std::max(y_lo, g.boundary_y(iy - margin));
    const double s_hi = std::min(y_hi, g.boundary_y(iy + 1 + margin));
    if (s_lo > s_hi) continue;
    double x_lo = std::numeric_limits<double>::infinity();
    double x_hi = -x_lo;
    widen(s_lo, x_lo, x_hi);
    widen(s_hi, x_lo, x_hi);
    for (const Point2& v : tri) {
      if (v.y >= s_lo && v.y <= s_hi) {
        x_lo = std::min(x_lo, v.x);
        x_hi = std::max(x_hi, v.x);
      }
    }
    if (x_lo > x_hi) continue;
    const int col_lo =
        std::max(0, static_cast<int>(std::floor((x_lo - g.origin_x) / g.resolution)) - margin - 1);
    const int col_hi =
        std::min(g.width - 1, static_cast<int>(std::floor((x_hi - g.origin_x) / g.resolution)) + margin + 1);
    for (int ix = col_lo; ix <= col_hi; ++ix) fn(ix, iy);
  }
}

// Calls fn(ix, iy) for every grid cell whose center lies inside the cone.
template <typename Fn>
void for_each_cone_cell(const GridGeometry& g, const Cone& cone, Fn&& fn) {
  for_each_triangle_cell(g, bounding_triangle(cone), 0, [&](int ix, int iy) {
    if (cone_contains(cone, g.center(ix, iy))) fn(ix, iy);
  });
}

// Occluder cell seen from one apex: bearing interval (relative to the cone
// axis) spanned by its corners, for a quick reject before the slab test.
struct OccluderView {
  CellIndex cell;
  double rel_lo = 0.0;
  double rel_hi = 0.0;
  bool around_apex = false;
};

}  // namespace

void RayIlmParams::validate() const {
  if (!(z_min < z_max)) throw std::invalid_argument("ray ILM: z_min must be below z_max");
  if (!(angular_resolution_deg > 0.0)) throw std::invalid_argument("ray ILM: angular resolution must be positive");
  if (!(max_range > 0.0)) throw std::invalid_argument("ray ILM: max_range must be positive");
  if (!open_unit(m_occupied) || !open_unit(m_free)) {
    throw std::invalid_argument("ray ILM: masses must lie in (0, 1)");
  }
}

void RayIrmParams::validate() const {
  if (history_depth < 1) throw std::invalid_argument("ray IRM: history_depth must be >= 1");
  if (!(cone_angle_deg > 0.0 && cone_angle_deg < 180.0)) {
    throw std::invalid_argument("ray IRM: cone angle must lie in (0, 180) degrees");
  }
  if (!(max_range > 0.0)) throw std::invalid_argument("ray IRM: max_range must be positive");
  if (!open_unit(m_occupied) || !open_unit(m_free)) {
    throw std::invalid_argument("ray IRM: masses must lie in (0, 1)");
  }
}

EvidenceGrid ray_ilm(const Scan& scan, const RayIlmParams& params, const GridGeometry& geometry) {
  params.validate();
  if (scan.kind != SensorKind::kLidar) throw std::invalid_argument("ray_ilm: scan is not a lidar scan");
  const Point2 sensor = scan.sensor_pose.translation();
  if (!geometry.cell_of(sensor)) throw std::out_of_range("ray_ilm: sensor pose outside the grid");

  const std::size_t n = geometry.cell_count();
  std::vector<std::uint8_t> detection(n, 0);
  std::vector<std::uint8_t> free(n, 0);
  for (const Point3& p : scan.points) {
    if (p.z < params.z_min || p.z > params.z_max) continue;
    if (auto c = geometry.cell_of(scan.point_in_reference(p))) detection[geometry.index(c->x, c->y)] = 1;
  }

  const long rays = std::lround(360.0 / params.angular_resolution_deg);
  const double step = params.angular_resolution_deg * kDegToRad;
  for (long k = 0; k < rays; ++k) {
    const double theta = static_cast<double>(k) * step;
    traverse_cells(geometry, sensor, {std::cos(theta), std::sin(theta)}, params.max_range,
                   [&](CellIndex c, double) {
                     const std::size_t i = geometry.index(c.x, c.y);
                     if (detection[i]) return false;
                     free[i] = 1;
                     return true;
                   });
  }

  EvidenceGrid grid(geometry);
  const MassFunction occ = occupied_mass(params.m_occupied);
  const MassFunction fre = free_mass(params.m_free);
  for (std::size_t i = 0; i < n; ++i) {
    if (detection[i]) {
      grid[i] = occ;
    } else if (free[i]) {
      grid[i] = fre;
    }
  }
  return grid;
}

bool cone_contains(const Cone& cone, Point2 p) {
  const Point2 v = p - cone.apex;
  const double d = std::hypot(v.x, v.y);
  if (d > cone.range) return false;
  if (d == 0.0) return true;
  return std::abs(normalize_angle(std::atan2(v.y, v.x) - cone.bearing)) <= cone.half_angle;
}

std::vector<Cone> build_cones(std::span<const Scan> scans, const RayIrmParams& params) {
  std::vector<Cone> cones;
  const double half = 0.5 * params.cone_angle_deg * kDegToRad;
  for (const Scan& scan : scans) {
    if (scan.kind != SensorKind::kRadar) throw std::invalid_argument("ray_irm: scan is not a radar scan");
    const Point2 apex = scan.sensor_pose.translation();
    for (const Point3& p : scan.points) {
      const Point2 v = scan.point_in_reference(p) - apex;
      const double r = std::hypot(v.x, v.y);
      if (!(r > 0.0) || r > params.max_range) continue;
      cones.push_back({apex, std::atan2(v.y, v.x), half, r});
    }
  }
  return cones;
}

EvidenceGrid ray_irm(std::span<const Scan> scans, const RayIrmParams& params,
                     const GridGeometry& geometry) {
  params.validate();
  EvidenceGrid grid(geometry);
  const std::vector<Cone> cones = build_cones(scans, params);
  if (cones.empty()) return grid;

  const std::size_t n = geometry.cell_count();
  const double res = geometry.resolution;

  const double half_diag = res * std::numbers::sqrt2 / 2.0;

  // Pass 1: cells touching the far band of each cone.
  std::vector<std::uint8_t> occluder(n, 0);
  for (const Cone& cone : cones) {
    for_each_triangle_cell(geometry, bounding_triangle(cone), 1, [&](int ix, int iy) {
      const Point2 v = geometry.center(ix, iy) - cone.apex;
      const double d = std::hypot(v.x, v.y);
      if (d + half_diag <= cone.range - res || d - half_diag > cone.range) return;
      if (d > half_diag) {
        const double rel = normalize_angle(std::atan2(v.y, v.x) - cone.bearing);
        if (std::abs(rel) > cone.half_angle + std::asin(half_diag / d)) return;
      }
      occluder[geometry.index(ix, iy)] = 1;
    });
  }

  // Pass 2: free space restricted by the occluders.
  std::vector<std::uint8_t> free(n, 0);
  std::vector<OccluderView> relevant;
  for (const Cone& cone : cones) {
    relevant.clear();
    // A blocking occluder touches the segment from the apex to a cone cell
    // center, so it intersects the bounding triangle.
    for_each_triangle_cell(geometry, bounding_triangle(cone), 1, [&](int ox, int oy) {
      if (!occluder[geometry.index(ox, oy)]) return;
      const CellIndex c{ox, oy};
      const Point2 v = geometry.center(c.x, c.y) - cone.apex;
      const double d = std::hypot(v.x, v.y);
      if (d - half_diag >= cone.range) return;
      OccluderView view{c};
      if (d <= 1.01 * half_diag) {
        view.around_apex = true;
        relevant.push_back(view);
        return;
      }
      const double rel = normalize_angle(std::atan2(v.y, v.x) - cone.bearing);
      const double spread = std::asin(std::min(1.0, half_diag / d));
      if (std::abs(rel) > cone.half_angle + spread + 1e-9) return;
      view.rel_lo = rel - spread - 1e-9;
      view.rel_hi = rel + spread + 1e-9;
      relevant.push_back(view);
    });

    for_each_cone_cell(geometry, cone, [&](int ix, int iy) {
      const std::size_t i = geometry.index(ix, iy);
      if (occluder[i] || free[i]) return;
      const Point2 target = geometry.center(ix, iy);
      const Point2 dir = target - cone.apex;
      const double rel = (dir.x == 0.0 && dir.y == 0.0)
                             ? 0.0
                             : normalize_angle(std::atan2(dir.y, dir.x) - cone.bearing);
      for (const OccluderView& o : relevant) {
        if (!o.around_apex && (rel < o.rel_lo || rel > o.rel_hi)) continue;
        const Crossing x = segment_crossing(geometry, cone.apex, dir, o.cell);
        if (x.crosses && x.t_enter < 1.0) return;
      }
      free[i] = 1;
    });
  }

  // Pass 3: occluders dropped, detections dominate.
  const MassFunction fre = free_mass(params.m_free);
  for (std::size_t i = 0; i < n; ++i) {
    if (free[i]) grid[i] = fre;
  }
  const MassFunction occ = occupied_mass(params.m_occupied);
  for (const Scan& scan : scans) {
    const Point2 apex = scan.sensor_pose.translation();
    for (const Point3& p : scan.points) {
      const Point2 q = scan.point_in_reference(p);
      const double r = norm(q - apex);
      if (!(r > 0.0) || r > params.max_range) continue;
      if (auto c = geometry.cell_of(q)) grid.at(c->x, c->y) = occ;
    }
  }
  return grid;
}

}  // namespace evigrid
