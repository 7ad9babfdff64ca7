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


#include <cstdio>

#include "tracedup/tracesim.h"

int main() {
  const tracedup::WeightedTrace trace{{"a.B.c", "d.E.f"}, {1.0, 0.5}};
  const double similarity = tracedup::NormalizedSimilarity(trace, trace);
  std::printf("%.3f\n", similarity);
  return similarity == 1.0 ? 0 : 1;
}
