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

#ifndef AGSBM_PARALLEL_H_
#define AGSBM_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace agsbm {

// Worker-count setting shared by all pipelines.  threads <= 0 means "use the
// hardware concurrency".  Results never depend on this value.
struct Execution {
  int threads = 1;
};

int ResolveThreads(int threads);

// Calls body(begin, end, worker) over a static partition of [0, count) into
// contiguous chunks, one per worker.  Exceptions thrown by the body are
// rethrown on the calling thread (the first one, by worker index).
void ParallelFor(size_t count, int threads,
                 const std::function<void(size_t, size_t, int)>& body);

// Convenience wrapper calling fn(i) for every index.
void ParallelForEach(size_t count, int threads,
                     const std::function<void(size_t)>& fn);

}  // namespace agsbm

#endif  // AGSBM_PARALLEL_H_
