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

#include "qa/embed/trainer.h"

#include <algorithm>
#include <numeric>

#include "qa/embed/supcon.h"
#include "qa/util/errors.h"
#include "qa/util/parallel.h"
#include "qa/util/random.h"

namespace qa {
namespace {

bool Trainable(const Segment &segment, size_t sample_size) {
  size_t eligible = 0;
  for (size_t count : segment.UtteranceCounts()) {
    if (count >= std::max(kMinTrainUtterances, 2 * sample_size)) ++eligible;
  }
  return eligible >= 2;
}

}  // namespace

EmbedTrainResult TrainEmbedder(EmbeddingModel *model, const std::vector<Segment> &segments,
                               const EmbedTrainConfig &config,
                               const std::function<void(int, double)> &on_epoch) {
  if (config.batch_segments == 0) throw ValidationError("batch size must be positive");
  if (config.epochs < 0) throw ValidationError("epochs must be non-negative");
  EmbedTrainResult result;
  std::vector<size_t> usable;
  for (size_t s = 0; s < segments.size(); ++s) {
    if (Trainable(segments[s], config.sample_size)) {
      usable.push_back(s);
    } else {
      ++result.skipped_segments;
    }
  }
  if (usable.empty()) throw Error("no training segment has two characters with enough lines");

  // Features of every utterance of the usable segments, computed once.
  std::vector<std::vector<SparseVector>> features(segments.size());
  ParallelFor(usable.size(), [&](size_t k) {
    const Segment &seg = segments[usable[k]];
    for (const Utterance &u : seg.utterances) features[usable[k]].push_back(model->Features(u.text));
  });

  Projection<float> &w = model->mutable_projection();
  std::vector<float> velocity;
  if (config.momentum > 0) velocity.assign(w.weights.size(), 0.0f);

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    std::vector<size_t> order = usable;
    Rng rng(DeriveSeed({config.seed, Fingerprint("embed-epoch"), static_cast<uint64_t>(epoch)}));
    rng.Shuffle(order);
    double epoch_total = 0;
    size_t epoch_steps = 0;
    for (size_t start = 0; start < order.size(); start += config.batch_segments) {
      ContrastiveBatch batch;
      const size_t end = std::min(order.size(), start + config.batch_segments);
      for (size_t b = start; b < end; ++b) {
        const Segment &seg = segments[order[b]];
        std::vector<TrainInstance> instances =
            BuildTrainInstances(seg, config.seed, epoch, config.sample_size);
        for (size_t c = 0; c < instances.size(); ++c) {
          for (const UtteranceCollection *col : {&instances[c].query, &instances[c].target}) {
            std::vector<SparseVector> f;
            for (size_t o : col->ordinals) f.push_back(features[order[b]][o]);
            batch.collections.push_back(std::move(f));
            batch.labels.push_back(c);
            batch.groups.push_back(b);
          }
        }
      }
      BatchLoss loss = ContrastiveLoss(w, model->config().mode, batch, config.temperature);
      double lr = config.learning_rate;
      if (config.warmup_steps > 0 && result.steps < static_cast<size_t>(config.warmup_steps)) {
        lr *= static_cast<double>(result.steps + 1) / config.warmup_steps;
      }
      for (const auto &[j, g] : Materialize(loss.grad)) {
        float *col = w.Column(j);
        float *vel = velocity.empty() ? nullptr : velocity.data() + size_t{j} * w.dim;
        for (uint32_t i = 0; i < w.dim; ++i) {
          double step = g[i] + config.weight_decay * col[i];
          if (vel) {
            vel[i] = static_cast<float>(config.momentum * vel[i] + step);
            step = vel[i];
          }
          col[i] = static_cast<float>(col[i] - lr * step);
        }
      }
      result.step_loss.push_back(loss.loss);
      epoch_total += loss.loss;
      ++epoch_steps;
      ++result.steps;
    }
    result.epoch_loss.push_back(epoch_total / static_cast<double>(epoch_steps));
    if (on_epoch) on_epoch(epoch, result.epoch_loss.back());
  }
  return result;
}

}  // namespace qa
