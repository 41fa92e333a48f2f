// Copyright 2026 The charqa Authors.
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

#ifndef QA_UTIL_PARALLEL_H_
#define QA_UTIL_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace qa {

// Worker count: QA_THREADS if set and positive, else hardware concurrency.
int WorkerCount();

// Runs fn(i) for i in [0, n). Each index is processed exactly once; callers
// write results into per-index slots so the reduction order stays fixed.
void ParallelFor(size_t n, const std::function<void(size_t)> &fn);

}  // namespace qa

#endif  // QA_UTIL_PARALLEL_H_
