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

#ifndef EVIGRID_GEOMETRY_HPP_
#define EVIGRID_GEOMETRY_HPP_

#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <string>

namespace evigrid {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }
inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 p) { return std::hypot(p.x, p.y); }

// Wraps an angle to (-pi, pi].
inline double normalize_angle(double theta) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  double wrapped = std::remainder(theta, kTwoPi);
  if (wrapped <= -std::numbers::pi) wrapped += kTwoPi;
  return wrapped;
}

// Rigid 2D transform. Used both for poses (frame in world) and for
// relative transforms between frames.
class Pose2D {
 public:
  Pose2D() = default;
  Pose2D(double x, double y, double theta)
      : x_(x), y_(y), theta_(normalize_angle(theta)), cos_(std::cos(theta_)), sin_(std::sin(theta_)) {}

  double x() const { return x_; }
  double y() const { return y_; }
  double theta() const { return theta_; }
  Point2 translation() const { return {x_, y_}; }

  Point2 apply(Point2 p) const { return {x_ + cos_ * p.x - sin_ * p.y, y_ + sin_ * p.x + cos_ * p.y}; }

  Pose2D inverse() const { return {-(cos_ * x_ + sin_ * y_), sin_ * x_ - cos_ * y_, -theta_}; }

  // (*this) o other: first other, then this.
  Pose2D compose(const Pose2D& other) const {
    const Point2 t = apply(other.translation());
    return {t.x, t.y, theta_ + other.theta_};
  }

  bool is_identity() const { return x_ == 0.0 && y_ == 0.0 && theta_ == 0.0; }

  friend bool operator==(const Pose2D& a, const Pose2D& b) {
    return a.x_ == b.x_ && a.y_ == b.y_ && a.theta_ == b.theta_;
  }

 private:
  double x_ = 0.0;
  double y_ = 0.0;
  double theta_ = 0.0;
  double cos_ = 1.0;
  double sin_ = 0.0;
};

struct CellIndex {
  int x = 0;
  int y = 0;

  friend bool operator==(const CellIndex&, const CellIndex&) = default;
};

// Metric layout of a row-major grid. Cell (0, 0) has its lower-left corner
// at `origin`; cell (i, j) covers [origin + i*res, origin + (i+1)*res).
struct GridGeometry {
  int width = 0;
  int height = 0;
  double resolution = 0.0;
  double origin_x = 0.0;
  double origin_y = 0.0;
  std::string frame_id;

  // Square grid centered on the frame origin.
  static GridGeometry centered(int width, int height, double resolution, std::string frame = {}) {
    return {width, height, resolution, -0.5 * width * resolution, -0.5 * height * resolution,
            std::move(frame)};
  }

  // 512 x 512 cells over 40 x 40 m, centered on the vehicle.
  static GridGeometry bird_eye_default() { return centered(512, 512, 40.0 / 512.0, "vehicle"); }

  std::size_t cell_count() const {
    return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  }
  std::size_t index(int ix, int iy) const {
    return static_cast<std::size_t>(iy) * static_cast<std::size_t>(width) +
           static_cast<std::size_t>(ix);
  }
  bool contains(int ix, int iy) const { return ix >= 0 && iy >= 0 && ix < width && iy < height; }

  double boundary_x(int ix) const { return origin_x + ix * resolution; }
  double boundary_y(int iy) const { return origin_y + iy * resolution; }

  Point2 center(int ix, int iy) const {
    return {origin_x + (ix + 0.5) * resolution, origin_y + (iy + 0.5) * resolution};
  }

  // Unbounded cell coordinates of a metric point.
  CellIndex cell_of_unbounded(Point2 p) const {
    return {static_cast<int>(std::floor((p.x - origin_x) / resolution)),
            static_cast<int>(std::floor((p.y - origin_y) / resolution))};
  }

  std::optional<CellIndex> cell_of(Point2 p) const {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) return std::nullopt;
    const double fx = std::floor((p.x - origin_x) / resolution);
    const double fy = std::floor((p.y - origin_y) / resolution);
    if (fx < 0.0 || fy < 0.0 || fx >= width || fy >= height) return std::nullopt;
    return CellIndex{static_cast<int>(fx), static_cast<int>(fy)};
  }

  // Same layout; frame_id is informational and not compared.
  bool same_layout(const GridGeometry& other) const {
    return width == other.width && height == other.height && resolution == other.resolution &&
           origin_x == other.origin_x && origin_y == other.origin_y;
  }
};

}  // namespace evigrid

#endif  // EVIGRID_GEOMETRY_HPP_
