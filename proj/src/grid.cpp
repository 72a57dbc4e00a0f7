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

#include "evigrid/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "evigrid/parallel.hpp"

namespace evigrid {

std::string_view to_string(SensorKind kind) {
  return kind == SensorKind::kLidar ? "lidar" : "radar";
}

SensorKind sensor_kind_from_string(std::string_view name) {
  if (name == "lidar") return SensorKind::kLidar;
  if (name == "radar") return SensorKind::kRadar;
  throw std::invalid_argument("unknown sensor kind '" + std::string(name) + "'");
}

Scan expressed_in(const Scan& scan, const Pose2D& frame) {
  Scan out = scan;
  out.sensor_pose = frame.inverse().compose(scan.sensor_pose);
  return out;
}

EvidenceGrid::EvidenceGrid(GridGeometry geometry) : geometry_(std::move(geometry)) {
  if (geometry_.width <= 0 || geometry_.height <= 0 || !(geometry_.resolution > 0.0)) {
    throw std::invalid_argument("degenerate grid geometry");
  }
  cells_.assign(geometry_.cell_count(), MassFunction::vacuous());
}

EvidenceGrid transform_grid(const EvidenceGrid& src, const Pose2D& src_in_dst,
                            const GridGeometry& dst_geometry, int threads) {
  if (!(src.geometry().resolution > 0.0) || !(dst_geometry.resolution > 0.0)) {
    throw std::invalid_argument("transform_grid: zero resolution");
  }
  if (src_in_dst.is_identity() && src.geometry().same_layout(dst_geometry)) {
    EvidenceGrid copy = src;
    return copy;
  }
  EvidenceGrid dst(dst_geometry);
  const Pose2D dst_to_src = src_in_dst.inverse();
  const GridGeometry& sg = src.geometry();

  // Only destination cells near the source footprint can hit a source cell.
  double lo_x = std::numeric_limits<double>::infinity(), lo_y = lo_x;
  double hi_x = -lo_x, hi_y = -lo_x;
  for (int cx : {0, sg.width}) {
    for (int cy : {0, sg.height}) {
      const Point2 c = src_in_dst.apply({sg.boundary_x(cx), sg.boundary_y(cy)});
      lo_x = std::min(lo_x, c.x);
      lo_y = std::min(lo_y, c.y);
      hi_x = std::max(hi_x, c.x);
      hi_y = std::max(hi_y, c.y);
    }
  }
  const auto clamp_index = [](double v, int n) {
    return static_cast<int>(std::clamp(v, 0.0, static_cast<double>(n)));
  };
  const double r = dst_geometry.resolution;
  const int x0 = clamp_index(std::floor((lo_x - dst_geometry.origin_x) / r) - 2, dst_geometry.width);
  const int x1 = clamp_index(std::ceil((hi_x - dst_geometry.origin_x) / r) + 2, dst_geometry.width);
  const int y0 = clamp_index(std::floor((lo_y - dst_geometry.origin_y) / r) - 2, dst_geometry.height);
  const int y1 = clamp_index(std::ceil((hi_y - dst_geometry.origin_y) / r) + 2, dst_geometry.height);
  if (x0 >= x1 || y0 >= y1) return dst;

  parallel_rows(y1 - y0, threads, [&](int begin, int end) {
    for (int iy = y0 + begin; iy < y0 + end; ++iy) {
      for (int ix = x0; ix < x1; ++ix) {
        const auto cell = sg.cell_of(dst_to_src.apply(dst_geometry.center(ix, iy)));
        if (cell) dst.at(ix, iy) = src.at(cell->x, cell->y);
      }
    }
  });
  return dst;
}

MassFunction fuse_cell(const MassFunction& map_cell, const MassFunction& update, FusionRule rule) {
  if (rule == FusionRule::kYager) return yager_combine(map_cell, update);
  return try_dempster_combine(map_cell, update).value_or(map_cell);
}

void fuse_grid(EvidenceGrid& map, const EvidenceGrid& update, FusionRule rule, int threads) {
  if (!map.geometry().same_layout(update.geometry())) {
    throw std::invalid_argument("fuse_grid: geometry mismatch");
  }
  const int width = map.width();
  parallel_rows(map.height(), threads, [&](int begin, int end) {
    for (std::size_t i = static_cast<std::size_t>(begin) * width;
         i < static_cast<std::size_t>(end) * width; ++i) {
      if (update[i].is_vacuous()) continue;
      map[i] = fuse_cell(map[i], update[i], rule);
    }
  });
}

std::uint32_t DetectionImage::total() const {
  return std::accumulate(counts.begin(), counts.end(), std::uint32_t{0});
}

void rasterize_into(const Scan& scan, DetectionImage& image) {
  for (const Point3& p : scan.points) {
    if (auto cell = image.geometry.cell_of(scan.point_in_reference(p))) {
      ++image.counts[image.geometry.index(cell->x, cell->y)];
    }
  }
}

DetectionImage rasterize(const Scan& scan, const GridGeometry& geometry) {
  DetectionImage image(geometry);
  rasterize_into(scan, image);
  return image;
}

}  // namespace evigrid
