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

#ifndef QA_ATTRIB_TRAINER_H_
#define QA_ATTRIB_TRAINER_H_

#include <cstdint>
#include <functional>
#include <vector>

#include "qa/attrib/pipeline.h"
#include "qa/attrib/scorer.h"

namespace qa {

struct ScorerTrainConfig {
  int epochs = 20;
  double learning_rate = 5e-6;
  double weight_decay = 0.01;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  size_t batch_size = 8;  // quotes per update
  uint64_t seed = 0;
};

struct ScorerTrainResult {
  std::vector<double> epoch_loss;  // mean per-quote loss
  size_t trainable = 0;            // quotes with a positive candidate
  size_t skipped = 0;
  size_t steps = 0;
};

// AdamW on the candidate log-likelihood. Quotes without candidates or
// without a positive candidate are skipped; throws when none remain.
// Embedding rows are updated only when they receive gradient.
ScorerTrainResult TrainScorer(ScorerModel *model, const std::vector<PreparedNovel> &novels,
                              const ScorerTrainConfig &config,
                              const std::function<void(int, double)> &on_epoch = {});

}  // namespace qa

#endif  // QA_ATTRIB_TRAINER_H_
