// Copyright 2026 The tracedup Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TRACEDUP_PARALLEL_H_
#define TRACEDUP_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace tracedup {

// Runs body(begin, end) over contiguous chunks of [0, n) on up to `threads`
// threads (values < 1 mean 1). The first exception thrown by any chunk is
// rethrown after all threads have joined.
void ParallelFor(size_t n, int threads,
                 const std::function<void(size_t begin, size_t end)>& body);

}  // namespace tracedup

#endif  // TRACEDUP_PARALLEL_H_
