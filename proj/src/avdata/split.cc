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

#include "qa/avdata/split.h"

#include <algorithm>
#include <cmath>

#include "qa/util/errors.h"
#include "qa/util/random.h"

namespace qa {

CorpusSplits SplitCorpus(std::vector<std::string> play_ids, const SplitRatios &ratios,
                         uint64_t seed) {
  if (ratios.train < 0 || ratios.val < 0 || ratios.test < 0 ||
      std::abs(ratios.train + ratios.val + ratios.test - 1.0) > 1e-9) {
    throw Error("split ratios must be non-negative and sum to 1");
  }
  std::sort(play_ids.begin(), play_ids.end());
  if (std::adjacent_find(play_ids.begin(), play_ids.end()) != play_ids.end()) {
    throw Error("duplicate play id in corpus");
  }
  const size_t n = play_ids.size();
  size_t needed = (ratios.train > 0) + (ratios.val > 0) + (ratios.test > 0);
  if (n < needed) {
    throw Error("cannot split " + std::to_string(n) + " plays into " +
                std::to_string(needed) + " splits");
  }
  // The epsilon guards against ratios like 0.1 * 10 landing just below 1.
  auto floor_size = [n](double ratio) {
    return static_cast<size_t>(std::floor(ratio * static_cast<double>(n) + 1e-9));
  };
  size_t n_val = floor_size(ratios.val);
  size_t n_test = floor_size(ratios.test);
  size_t n_train = n - n_val - n_test;

  Rng rng(DeriveSeed({seed, Fingerprint("corpus-split")}));
  rng.Shuffle(play_ids);

  CorpusSplits splits;
  splits.train.assign(play_ids.begin(), play_ids.begin() + n_train);
  splits.val.assign(play_ids.begin() + n_train, play_ids.begin() + n_train + n_val);
  splits.test.assign(play_ids.begin() + n_train + n_val, play_ids.end());
  std::sort(splits.train.begin(), splits.train.end());
  std::sort(splits.val.begin(), splits.val.end());
  std::sort(splits.test.begin(), splits.test.end());
  return splits;
}

}  // namespace qa
