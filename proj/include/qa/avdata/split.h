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

#ifndef QA_AVDATA_SPLIT_H_
#define QA_AVDATA_SPLIT_H_

#include <cstdint>
#include <string>
#include <vector>

namespace qa {

struct SplitRatios {
  double train = 0.8;
  double val = 0.1;
  double test = 0.1;
};

// Play ids per split, each list sorted.
struct CorpusSplits {
  std::vector<std::string> train;
  std::vector<std::string> val;
  std::vector<std::string> test;
};

// Assigns whole plays to splits. The ids are sorted before a seeded shuffle,
// so the result depends only on the id set and the seed. Validation and test
// sizes are floor(ratio * n); the remainder goes to train. Throws qa::Error
// when ratios are negative or do not sum to 1, when ids repeat, or when
// there are fewer plays than splits with a positive ratio.
CorpusSplits SplitCorpus(std::vector<std::string> play_ids, const SplitRatios &ratios,
                         uint64_t seed);

}  // namespace qa

#endif  // QA_AVDATA_SPLIT_H_
