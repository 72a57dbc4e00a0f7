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

#include "json_io.hpp"

#include <cmath>
#include <stdexcept>

#include "evigrid/errors.hpp"

namespace evigrid::json_io {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ConfigError(where + ": " + what);
}

double finite_number(const json& v, const std::string& where) {
  if (!v.is_number()) fail(where, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(where, "expected a finite number");
  return x;
}

}  // namespace

const json& require(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) fail(where, std::string("missing key '") + key + "'");
  return *it;
}

double get_number(const json& j, const char* key, const std::string& where) {
  return finite_number(require(j, key, where), where + "." + key);
}

double get_number_or(const json& j, const char* key, double fallback, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  return finite_number(j.at(key), where + "." + key);
}

int get_int_or(const json& j, const char* key, int fallback, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_number_integer()) fail(where + "." + key, "expected an integer");
  return v.get<int>();
}

Point2 point_from(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) fail(where, "expected [x, y]");
  return {finite_number(j[0], where), finite_number(j[1], where)};
}

json point_to(Point2 p) { return json::array({p.x, p.y}); }

Pose2D pose_from(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3) fail(where, "expected [x, y, theta]");
  return {finite_number(j[0], where), finite_number(j[1], where), finite_number(j[2], where)};
}

json pose_to(const Pose2D& pose) { return json::array({pose.x(), pose.y(), pose.theta()}); }

GridGeometry geometry_from(const json& j, const std::string& frame, const std::string& where) {
  const int width = get_int_or(j, "width", 0, where);
  const int height = get_int_or(j, "height", 0, where);
  const double resolution = get_number(j, "resolution", where);
  if (width <= 0 || height <= 0 || width > 65536 || height > 65536) {
    fail(where, "width and height must be in [1, 65536]");
  }
  if (!(resolution > 0.0)) fail(where + ".resolution", "must be positive");
  GridGeometry g = GridGeometry::centered(width, height, resolution, frame);
  if (j.contains("origin")) {
    const Point2 o = point_from(j.at("origin"), where + ".origin");
    g.origin_x = o.x;
    g.origin_y = o.y;
  }
  return g;
}

json geometry_to(const GridGeometry& g) {
  return {{"width", g.width},
          {"height", g.height},
          {"resolution", g.resolution},
          {"origin", json::array({g.origin_x, g.origin_y})}};
}

World world_from(const json& j, const std::string& where) {
  const json& extent = require(j, "extent", where);
  if (!extent.is_array() || extent.size() != 2) fail(where + ".extent", "expected [[xmin, ymin], [xmax, ymax]]");
  const Point2 lo = point_from(extent[0], where + ".extent");
  const Point2 hi = point_from(extent[1], where + ".extent");
  std::vector<ConvexPolygon> obstacles;
  if (j.contains("obstacles")) {
    const json& list = j.at("obstacles");
    if (!list.is_array()) fail(where + ".obstacles", "expected an array");
    for (std::size_t k = 0; k < list.size(); ++k) {
      const std::string at = where + ".obstacles[" + std::to_string(k) + "]";
      if (!list[k].is_array()) fail(at, "expected an array of [x, y]");
      std::vector<Point2> vertices;
      for (const json& v : list[k]) vertices.push_back(point_from(v, at));
      try {
        obstacles.emplace_back(std::move(vertices));
      } catch (const std::invalid_argument& e) {
        fail(at, e.what());
      }
    }
  }
  try {
    return World(lo, hi, std::move(obstacles));
  } catch (const std::invalid_argument& e) {
    fail(where, e.what());
  }
}

json world_to(const World& world) {
  json obstacles = json::array();
  for (const ConvexPolygon& poly : world.obstacles()) {
    json vertices = json::array();
    for (Point2 p : poly.vertices()) vertices.push_back(point_to(p));
    obstacles.push_back(std::move(vertices));
  }
  return {{"extent", json::array({point_to(world.extent_min()), point_to(world.extent_max())})},
          {"obstacles", std::move(obstacles)}};
}

}  // namespace evigrid::json_io
