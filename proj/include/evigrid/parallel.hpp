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

#ifndef EVIGRID_PARALLEL_HPP_
#define EVIGRID_PARALLEL_HPP_

#include <algorithm>
#include <thread>
#include <vector>

namespace evigrid {

// Splits [0, rows) into contiguous blocks, one per worker. `fn(begin, end)`
// must only touch rows in its block, so the result does not depend on the
// thread count.
template <typename Fn>
void parallel_rows(int rows, int threads, Fn&& fn) {
  const int workers = std::clamp(threads, 1, std::max(rows, 1));
  if (workers == 1) {
    fn(0, rows);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  const int block = (rows + workers - 1) / workers;
  for (int begin = 0; begin < rows; begin += block) {
    const int end = std::min(rows, begin + block);
    pool.emplace_back([&fn, begin, end] { fn(begin, end); });
  }
}

}  // namespace evigrid

#endif  // EVIGRID_PARALLEL_HPP_
