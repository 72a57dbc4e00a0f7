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

#ifndef EVIGRID_GRID_HPP_
#define EVIGRID_GRID_HPP_

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "evigrid/evidence.hpp"
#include "evigrid/geometry.hpp"

namespace evigrid {

enum class SensorKind { kLidar, kRadar };

std::string_view to_string(SensorKind kind);
SensorKind sensor_kind_from_string(std::string_view name);

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend bool operator==(const Point3&, const Point3&) = default;
};

// One sensor sweep. `points` are in the sensor frame; `sensor_pose` places
// the sensor in some reference frame (world for recordings, the current
// vehicle frame once pose-compensated).
struct Scan {
  double timestamp = 0.0;
  Pose2D sensor_pose;
  SensorKind kind = SensorKind::kLidar;
  int sensor_id = 0;
  std::vector<Point3> points;

  Point2 point_in_reference(const Point3& p) const { return sensor_pose.apply({p.x, p.y}); }
};

// Re-expresses the sensor pose in `frame` (a pose in the current reference).
Scan expressed_in(const Scan& scan, const Pose2D& frame);

class EvidenceGrid {
 public:
  EvidenceGrid() = default;
  explicit EvidenceGrid(GridGeometry geometry);

  const GridGeometry& geometry() const { return geometry_; }
  int width() const { return geometry_.width; }
  int height() const { return geometry_.height; }

  const MassFunction& at(int ix, int iy) const { return cells_[geometry_.index(ix, iy)]; }
  MassFunction& at(int ix, int iy) { return cells_[geometry_.index(ix, iy)]; }
  const MassFunction& operator[](std::size_t i) const { return cells_[i]; }
  MassFunction& operator[](std::size_t i) { return cells_[i]; }

  std::span<const MassFunction> cells() const { return cells_; }
  std::span<MassFunction> cells() { return cells_; }

  // Same geometry and bit-identical cells.
  friend bool operator==(const EvidenceGrid& a, const EvidenceGrid& b) {
    return a.geometry_.same_layout(b.geometry_) && a.cells_ == b.cells_;
  }

 private:
  GridGeometry geometry_;
  std::vector<MassFunction> cells_;
};

// Nearest-neighbour resampling of `src` into `dst_geometry`. `src_in_dst`
// is the pose of the source frame expressed in the destination frame.
// Destination cells whose centers fall outside `src` are vacuous.
EvidenceGrid transform_grid(const EvidenceGrid& src, const Pose2D& src_in_dst,
                            const GridGeometry& dst_geometry, int threads = 1);

enum class FusionRule { kDempster, kYager };

// On total conflict under Dempster's rule the map cell is kept.
MassFunction fuse_cell(const MassFunction& map_cell, const MassFunction& update, FusionRule rule);

// In-place per-cell fusion; geometries must match.
void fuse_grid(EvidenceGrid& map, const EvidenceGrid& update, FusionRule rule, int threads = 1);

struct DetectionImage {
  GridGeometry geometry;
  std::vector<std::uint32_t> counts;

  explicit DetectionImage(GridGeometry g)
      : geometry(std::move(g)), counts(geometry.cell_count(), 0) {}

  bool occupied(int ix, int iy) const { return counts[geometry.index(ix, iy)] > 0; }
  std::uint32_t total() const;
};

// Bins scan points into the grid; the grid shares the reference frame of
// scan.sensor_pose. Points outside the extent are dropped.
DetectionImage rasterize(const Scan& scan, const GridGeometry& geometry);
void rasterize_into(const Scan& scan, DetectionImage& image);

}  // namespace evigrid

#endif  // EVIGRID_GRID_HPP_
