/**********
 *   Copyright 2026 The gpoptics Authors
 *
 *   Licensed under the Apache License, Version 2.0 (the "License");
 *   you may not use this file except in compliance with the License.
 *   You may obtain a copy of the License at
 *
 *       http://www.apache.org/licenses/LICENSE-2.0
 *
 *   Unless required by applicable law or agreed to in writing, software
 *   distributed under the License is distributed on an "AS IS" BASIS,
 *   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 *   See the License for the specific language governing permissions and
 *   limitations under the License.
\**********/
#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace gpoptics::detail {

/// Worker count: GPOPTICS_THREADS caps parallelism (0 or unset = auto).
inline int worker_count() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("GPOPTICS_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap > 0 && static_cast<unsigned>(cap) < hw) return static_cast<int>(cap);
  }
  return static_cast<int>(hw);
}

/// Runs fn(i) for i in [0, n) over disjoint index blocks. Each index is
/// visited exactly once by one thread, so results are deterministic as long
/// as fn writes only to its own index.
inline void parallel_for(int n, const std::function<void(int)>& fn) {
  const int workers = worker_count();
  if (workers <= 1 || n < 256) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  const int threads = workers < n ? workers : n;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  const int chunk = (n + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    const int begin = t * chunk;
    const int end = begin + chunk < n ? begin + chunk : n;
    if (begin >= end) break;
    pool.emplace_back([begin, end, &fn] {
      for (int i = begin; i < end; ++i) fn(i);
    });
  }
  for (std::thread& th : pool) th.join();
}

}  // namespace gpoptics::detail
