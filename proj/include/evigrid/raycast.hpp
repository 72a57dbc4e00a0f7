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

#ifndef EVIGRID_RAYCAST_HPP_
#define EVIGRID_RAYCAST_HPP_

#include <algorithm>
#include <cmath>
#include <limits>

#include "evigrid/geometry.hpp"

namespace evigrid {

// Exact grid-line (supercover) traversal of p(t) = origin + t * dir for
// t in [0, t_max). A cell is visited iff the ray crosses it with positive
// length and enters it before t_max, so rays cannot slip diagonally between
// two cells that share a corner. Cells are reported in order of entry;
// cells outside the grid are skipped. `visit(CellIndex, t_enter)` returns
// false to stop.
//
// Boundary crossings are computed directly from the boundary index rather
// than accumulated, so entry/exit parameters are reproducible by a per-cell
// slab test (see segment_crossing).
template <typename Visitor>
void traverse_cells(const GridGeometry& g, Point2 origin, Point2 dir, double t_max,
                    Visitor&& visit) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  CellIndex cell = g.cell_of_unbounded(origin);
  const int step_x = dir.x > 0.0 ? 1 : (dir.x < 0.0 ? -1 : 0);
  const int step_y = dir.y > 0.0 ? 1 : (dir.y < 0.0 ? -1 : 0);

  const auto next_x = [&](int ix) {
    if (step_x == 0) return kInf;
    return (g.boundary_x(step_x > 0 ? ix + 1 : ix) - origin.x) / dir.x;
  };
  const auto next_y = [&](int iy) {
    if (step_y == 0) return kInf;
    return (g.boundary_y(step_y > 0 ? iy + 1 : iy) - origin.y) / dir.y;
  };

  double t_enter = 0.0;
  double t_next_x = next_x(cell.x);
  double t_next_y = next_y(cell.y);
  while (t_enter < t_max) {
    const double t_exit = std::min(t_next_x, t_next_y);
    if (t_exit > t_enter && g.contains(cell.x, cell.y)) {
      if (!visit(cell, t_enter)) return;
    }
    if (t_exit == kInf) return;
    // Leaving the grid for good.
    if ((cell.x < 0 && step_x <= 0) || (cell.x >= g.width && step_x >= 0) ||
        (cell.y < 0 && step_y <= 0) || (cell.y >= g.height && step_y >= 0)) {
      return;
    }
    if (t_next_x <= t_next_y) {
      cell.x += step_x;
      t_enter = t_next_x;
      t_next_x = next_x(cell.x);
    } else {
      cell.y += step_y;
      t_enter = t_next_y;
      t_next_y = next_y(cell.y);
    }
  }
}

struct Crossing {
  double t_enter = 0.0;
  double t_exit = 0.0;
  bool crosses = false;
};

// Slab intersection of the ray with one cell, using the same boundary
// arithmetic as traverse_cells. `crosses` means positive length with
// t_enter clamped to 0.
inline Crossing segment_crossing(const GridGeometry& g, Point2 origin, Point2 dir, CellIndex cell) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  const auto slab = [](double lo, double hi, double o, double d, double& t0, double& t1) {
    if (d > 0.0) {
      t0 = (lo - o) / d;
      t1 = (hi - o) / d;
    } else if (d < 0.0) {
      t0 = (hi - o) / d;
      t1 = (lo - o) / d;
    } else if (o >= lo && o < hi) {
      t0 = -kInf;
      t1 = kInf;
    } else {
      t0 = kInf;
      t1 = -kInf;
    }
  };
  double tx0, tx1, ty0, ty1;
  slab(g.boundary_x(cell.x), g.boundary_x(cell.x + 1), origin.x, dir.x, tx0, tx1);
  slab(g.boundary_y(cell.y), g.boundary_y(cell.y + 1), origin.y, dir.y, ty0, ty1);
  Crossing c;
  c.t_enter = std::max({tx0, ty0, 0.0});
  c.t_exit = std::min(tx1, ty1);
  c.crosses = c.t_exit > c.t_enter;
  return c;
}

}  // namespace evigrid

#endif  // EVIGRID_RAYCAST_HPP_
