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

#ifndef EVIGRID_ERRORS_HPP_
#define EVIGRID_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace evigrid {

// Two sources put all of their committed mass on opposite states.
class TotalConflict : public std::runtime_error {
 public:
  TotalConflict() : std::runtime_error("total conflict: K = 1") {}
};

// Malformed or unreadable files. The message names the offending path/field.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid scenario / run configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace evigrid

#endif  // EVIGRID_ERRORS_HPP_
