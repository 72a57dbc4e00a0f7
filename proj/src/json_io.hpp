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

#ifndef EVIGRID_SRC_JSON_IO_HPP_
#define EVIGRID_SRC_JSON_IO_HPP_

#include <string>

#include "evigrid/geometry.hpp"
#include "evigrid/world.hpp"
#include "json.hpp"

namespace evigrid::json_io {

using nlohmann::json;

// All readers throw ConfigError naming the offending key.
const json& require(const json& j, const char* key, const std::string& where);
double get_number(const json& j, const char* key, const std::string& where);
double get_number_or(const json& j, const char* key, double fallback, const std::string& where);
int get_int_or(const json& j, const char* key, int fallback, const std::string& where);

Point2 point_from(const json& j, const std::string& where);
json point_to(Point2 p);

// [x, y, theta]
Pose2D pose_from(const json& j, const std::string& where);
json pose_to(const Pose2D& pose);

// {"width", "height", "resolution", "origin": [x, y]}; without "origin" the
// grid is centered on the frame origin.
GridGeometry geometry_from(const json& j, const std::string& frame, const std::string& where);
json geometry_to(const GridGeometry& g);

// {"extent": [[xmin, ymin], [xmax, ymax]], "obstacles": [[[x, y], ...], ...]}
World world_from(const json& j, const std::string& where);
json world_to(const World& world);

}  // namespace evigrid::json_io

#endif  // EVIGRID_SRC_JSON_IO_HPP_
