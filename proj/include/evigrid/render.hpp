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

#ifndef EVIGRID_RENDER_HPP_
#define EVIGRID_RENDER_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "evigrid/grid.hpp"

namespace evigrid {

// (R, G, B) = round(255 * (m_f, m_o, m_u)).
std::array<std::uint8_t, 3> cell_color(const MassFunction& m);

// Interleaved RGB rows, top row = highest y.
std::vector<std::uint8_t> render_rgb(const EvidenceGrid& grid);

// Throws IoError.
void render_png(const EvidenceGrid& grid, const std::filesystem::path& path);

}  // namespace evigrid

#endif  // EVIGRID_RENDER_HPP_
