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

#include "evigrid/world.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "evigrid/errors.hpp"

namespace evigrid {

namespace {

double signed_area(const std::vector<Point2>& v) {
  double a = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) a += cross(v[i], v[(i + 1) % v.size()]);
  return 0.5 * a;
}

}  // namespace

ConvexPolygon::ConvexPolygon(std::vector<Point2> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.size() < 3) throw std::invalid_argument("polygon needs at least 3 vertices");
  if (signed_area(vertices_) < 0.0) std::reverse(vertices_.begin(), vertices_.end());
  if (!(signed_area(vertices_) > 0.0)) throw std::invalid_argument("polygon has zero area");
  const std::size_t n = vertices_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 e0 = vertices_[(i + 1) % n] - vertices_[i];
    const Point2 e1 = vertices_[(i + 2) % n] - vertices_[(i + 1) % n];
    if (cross(e0, e1) < 0.0) throw std::invalid_argument("polygon is not convex");
  }
  lo_ = hi_ = vertices_.front();
  for (const Point2& p : vertices_) {
    lo_ = {std::min(lo_.x, p.x), std::min(lo_.y, p.y)};
    hi_ = {std::max(hi_.x, p.x), std::max(hi_.y, p.y)};
  }
}

double ConvexPolygon::area() const { return signed_area(vertices_); }

bool ConvexPolygon::contains(Point2 p) const {
  if (p.x < lo_.x || p.y < lo_.y || p.x > hi_.x || p.y > hi_.y) return false;
  const std::size_t n = vertices_.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (cross(vertices_[(i + 1) % n] - vertices_[i], p - vertices_[i]) < 0.0) return false;
  }
  return true;
}

World::World(Point2 extent_min, Point2 extent_max, std::vector<ConvexPolygon> obstacles)
    : extent_min_(extent_min), extent_max_(extent_max), obstacles_(std::move(obstacles)) {
  if (!(extent_min.x < extent_max.x && extent_min.y < extent_max.y)) {
    throw std::invalid_argument("world extent is empty");
  }
}

bool World::occupied_at(Point2 p) const {
  return std::any_of(obstacles_.begin(), obstacles_.end(),
                     [p](const ConvexPolygon& poly) { return poly.contains(p); });
}

std::optional<RayHit> World::cast_ray(Point2 origin, Point2 dir, double max_range) const {
  std::optional<RayHit> best;
  double best_t = max_range;
  for (std::size_t k = 0; k < obstacles_.size(); ++k) {
    const auto& v = obstacles_[k].vertices();
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Point2 a = v[i];
      const Point2 e = v[(i + 1) % n] - a;
      const double denom = cross(dir, e);
      if (denom == 0.0) continue;
      const Point2 w = a - origin;
      const double t = cross(w, e) / denom;
      const double s = cross(w, dir) / denom;
      if (!(t > 0.0) || t > best_t || s < 0.0 || s > 1.0) continue;
      best_t = t;
      const double len = norm(e);
      best = RayHit{t, a + s * e, static_cast<int>(k), static_cast<int>(i),
                    Point2{e.y / len, -e.x / len}};
    }
  }
  return best;
}

void World::validate(double min_area) const {
  for (std::size_t k = 0; k < obstacles_.size(); ++k) {
    const ConvexPolygon& p = obstacles_[k];
    if (!(p.area() > min_area)) {
      throw ConfigError("obstacle " + std::to_string(k) + " is degenerate (area below resolution^2)");
    }
    if (p.min_corner().x < extent_min_.x || p.min_corner().y < extent_min_.y ||
        p.max_corner().x > extent_max_.x || p.max_corner().y > extent_max_.y) {
      throw ConfigError("obstacle " + std::to_string(k) + " leaves the world extent");
    }
  }
}

}  // namespace evigrid
