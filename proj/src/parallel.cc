// Copyright 2026 The agsbm Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "agsbm/parallel.h"

#include <algorithm>
#include <exception>
#include <thread>
#include <vector>

namespace agsbm {

int ResolveThreads(int threads) {
  if (threads > 0) return threads;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void ParallelFor(size_t count, int threads,
                 const std::function<void(size_t, size_t, int)>& body) {
  if (count == 0) return;
  const size_t workers =
      std::min<size_t>(static_cast<size_t>(ResolveThreads(threads)), count);
  if (workers <= 1) {
    body(0, count, 0);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const size_t chunk = count / workers;
  const size_t extra = count % workers;
  size_t begin = 0;
  for (size_t w = 0; w < workers; ++w) {
    const size_t end = begin + chunk + (w < extra ? 1 : 0);
    pool.emplace_back([&, begin, end, w] {
      try {
        body(begin, end, static_cast<int>(w));
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
    begin = end;
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

void ParallelForEach(size_t count, int threads,
                     const std::function<void(size_t)>& fn) {
  ParallelFor(count, threads, [&](size_t begin, size_t end, int) {
    for (size_t i = begin; i < end; ++i) fn(i);
  });
}

}  // namespace agsbm
