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

#ifndef EVIGRID_WORLD_HPP_
#define EVIGRID_WORLD_HPP_

#include <optional>
#include <vector>

#include "evigrid/geometry.hpp"

namespace evigrid {

// Convex polygon, stored counter-clockwise.
class ConvexPolygon {
 public:
  // Accepts either orientation. Throws std::invalid_argument when the
  // polygon has fewer than three vertices, is not convex or has zero area.
  explicit ConvexPolygon(std::vector<Point2> vertices);

  const std::vector<Point2>& vertices() const { return vertices_; }
  double area() const;
  // Closed: boundary points are inside.
  bool contains(Point2 p) const;
  Point2 min_corner() const { return lo_; }
  Point2 max_corner() const { return hi_; }

 private:
  std::vector<Point2> vertices_;
  Point2 lo_;
  Point2 hi_;
};

struct RayHit {
  double range = 0.0;
  Point2 point;
  int obstacle = -1;
  int edge = -1;       // edge i runs from vertex i to vertex i+1
  Point2 edge_normal;  // outward unit normal
};

// Ground-truth environment: obstacles are occupied, everything else free.
class World {
 public:
  World() = default;
  World(Point2 extent_min, Point2 extent_max, std::vector<ConvexPolygon> obstacles);

  Point2 extent_min() const { return extent_min_; }
  Point2 extent_max() const { return extent_max_; }
  const std::vector<ConvexPolygon>& obstacles() const { return obstacles_; }

  bool occupied_at(Point2 p) const;

  // First obstacle boundary hit by origin + t * dir, 0 < t <= max_range,
  // with `dir` a unit vector.
  std::optional<RayHit> cast_ray(Point2 origin, Point2 dir, double max_range) const;

  // Obstacles must have area above `min_area` and lie inside the extent.
  void validate(double min_area) const;

 private:
  Point2 extent_min_;
  Point2 extent_max_;
  std::vector<ConvexPolygon> obstacles_;
};

}  // namespace evigrid

#endif  // EVIGRID_WORLD_HPP_
