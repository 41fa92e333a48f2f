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

#ifndef QA_EMBED_TRAINER_H_
#define QA_EMBED_TRAINER_H_

#include <cstdint>
#include <functional>
#include <vector>

#include "qa/avdata/queryset.h"
#include "qa/corpus/play.h"
#include "qa/embed/model.h"

namespace qa {

struct EmbedTrainConfig {
  int epochs = 20;
  double learning_rate = 2e-5;
  // Segments per gradient step: 8 scenes for scene training, 1 for whole
  // plays.
  size_t batch_segments = 8;
  size_t sample_size = kTrainSampleSize;
  double temperature = 0.1;
  // Off by default.
  double momentum = 0;
  double weight_decay = 0;
  int warmup_steps = 0;
  uint64_t seed = 0;
};

struct EmbedTrainResult {
  std::vector<double> epoch_loss;  // mean batch loss per epoch
  std::vector<double> step_loss;
  size_t steps = 0;
  // Segments dropped for having fewer than two characters with enough
  // lines to be sampled (they provide no negatives).
  size_t skipped_segments = 0;
};

// Trains the projection with segment-restricted supervised contrastive
// loss and plain gradient descent. Every epoch shuffles the segments,
// resamples each character's query/target pair, and takes one step per
// batch. Deterministic in (model, segments, config). Throws Error when no
// segment has two eligible characters.
EmbedTrainResult TrainEmbedder(EmbeddingModel *model, const std::vector<Segment> &segments,
                               const EmbedTrainConfig &config,
                               const std::function<void(int, double)> &on_epoch = nullptr);

}  // namespace qa

#endif  // QA_EMBED_TRAINER_H_
