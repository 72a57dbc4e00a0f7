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

#ifndef EVIGRID_GEOMETRIC_ISM_HPP_
#define EVIGRID_GEOMETRIC_ISM_HPP_

#include <span>
#include <vector>

#include "evigrid/grid.hpp"

namespace evigrid {

// Ray-casting inverse lidar model.
struct RayIlmParams {
  double z_min = 0.3;
  double z_max = 3.0;
  double angular_resolution_deg = 0.2;
  double max_range = 15.0;
  double m_occupied = 0.5;
  double m_free = 0.05;

  void validate() const;
};

// Cone-based inverse radar model.
struct RayIrmParams {
  int history_depth = 10;
  double cone_angle_deg = 2.0;
  double m_free = 0.3;
  double m_occupied = 0.5;
  double max_range = 20.0;

  void validate() const;
};

inline MassFunction free_mass(double m) { return MassFunction::unchecked(m, 0.0, 1.0 - m); }
inline MassFunction occupied_mass(double m) { return MassFunction::unchecked(0.0, m, 1.0 - m); }

// Points outside [z_min, z_max] are dropped; the rest are binned into the
// grid. Rays leave the sensor position every angular_resolution degrees
// (measured in the grid frame) and mark crossed cells free until the first
// detection cell or max_range. Detection cells are occupied.
// scan.sensor_pose must be expressed in the grid frame. Throws
// std::invalid_argument for a non-lidar scan and std::out_of_range when the
// sensor lies outside the grid.
EvidenceGrid ray_ilm(const Scan& scan, const RayIlmParams& params, const GridGeometry& geometry);

// One cone per detection: apex at the sensor position of its scan, axis
// towards the detection, opening cone_angle, length = detection range.
// A cell belongs to a cone when its center lies inside the circular sector.
struct Cone {
  Point2 apex;
  double bearing = 0.0;
  double half_angle = 0.0;
  double range = 0.0;
};

bool cone_contains(const Cone& cone, Point2 p);

// Three passes:
//  1. every cell that may touch the far band of a cone (the part of the
//     sector with distance in (range - resolution, range]) is marked as a
//     temporary occluder. The test is conservative: the cell center is
//     allowed half a cell diagonal of slack both radially and angularly, so
//     no line of sight can slip past the band between two cell centers;
//  2. every cone marks its cells free, except occluder cells and cells whose
//     line of sight from the apex crosses an occluder cell;
//  3. occluders are dropped and the detection cells marked occupied.
// Detections beyond max_range are ignored. Scans must be radar scans with
// sensor poses expressed in the grid frame.
EvidenceGrid ray_irm(std::span<const Scan> scans, const RayIrmParams& params,
                     const GridGeometry& geometry);

// Cones of all in-range detections, in scan order.
std::vector<Cone> build_cones(std::span<const Scan> scans, const RayIrmParams& params);

}  // namespace evigrid

#endif  // EVIGRID_GEOMETRIC_ISM_HPP_
