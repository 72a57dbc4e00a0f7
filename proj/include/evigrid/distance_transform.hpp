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

#ifndef EVIGRID_DISTANCE_TRANSFORM_HPP_
#define EVIGRID_DISTANCE_TRANSFORM_HPP_

#include <cstdint>
#include <span>
#include <vector>

namespace evigrid {

// Exact squared Euclidean distance (in cells, between cell centers) from
// every cell to the nearest seed cell, row-major. Cells are +inf when there
// is no seed. Separable lower-envelope algorithm (Felzenszwalb-Huttenlocher).
std::vector<double> squared_distance_transform(std::span<const std::uint8_t> seeds, int width,
                                               int height);

}  // namespace evigrid

#endif  // EVIGRID_DISTANCE_TRANSFORM_HPP_
