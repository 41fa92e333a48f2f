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

#include "qa/attrib/trainer.h"

#include <cmath>

#include "qa/util/errors.h"
#include "qa/util/random.h"

namespace qa {
namespace {

struct AdamState {
  std::vector<double> m, v;
  void Resize(size_t n) {
    m.assign(n, 0.0);
    v.assign(n, 0.0);
  }
};

class AdamW {
 public:
  AdamW(const ScorerTrainConfig &c, const ScorerParams &p) : c_(c) {
    embed_.Resize(p.embed.size());
    position_.Resize(p.position.size());
    w1_.Resize(p.w1.size());
    b1_.Resize(p.b1.size());
    w2_.Resize(p.w2.size());
  }

  void Step(const ScorerGradient &g, size_t row_dim, ScorerParams *p) {
    ++t_;
    bc1_ = 1.0 - std::pow(c_.beta1, static_cast<double>(t_));
    bc2_ = 1.0 - std::pow(c_.beta2, static_cast<double>(t_));
    Dense(g.position, &position_, &p->position, 0, g.position.size());
    Dense(g.w1, &w1_, &p->w1, 0, g.w1.size());
    Dense(g.b1, &b1_, &p->b1, 0, g.b1.size());
    Dense(g.w2, &w2_, &p->w2, 0, g.w2.size());
    for (const auto &[row, grad] : g.embed) {
      Dense(grad, &embed_, &p->embed, size_t{row} * row_dim, row_dim);
    }
  }

 private:
  // Updates params[offset, offset + n) from grad[0, n).
  void Dense(const std::vector<double> &grad, AdamState *s, std::vector<double> *params,
             size_t offset, size_t n) {
    for (size_t i = 0; i < n; ++i) {
      const size_t j = offset + i;
      s->m[j] = c_.beta1 * s->m[j] + (1.0 - c_.beta1) * grad[i];
      s->v[j] = c_.beta2 * s->v[j] + (1.0 - c_.beta2) * grad[i] * grad[i];
      const double mhat = s->m[j] / bc1_, vhat = s->v[j] / bc2_;
      double &w = (*params)[j];
      w -= c_.learning_rate * (mhat / (std::sqrt(vhat) + c_.epsilon) + c_.weight_decay * w);
    }
  }

  const ScorerTrainConfig &c_;
  AdamState embed_, position_, w1_, b1_, w2_;
  size_t t_ = 0;
  double bc1_ = 1.0, bc2_ = 1.0;
};

struct Example {
  size_t novel;
  size_t quote;
  std::vector<bool> positives;
};

}  // namespace

ScorerTrainResult TrainScorer(ScorerModel *model, const std::vector<PreparedNovel> &novels,
                              const ScorerTrainConfig &config,
                              const std::function<void(int, double)> &on_epoch) {
  if (config.batch_size == 0) throw ValidationError("batch size must be positive");
  if (config.epochs < 0) throw ValidationError("epochs must be non-negative");
  ScorerTrainResult result;
  std::vector<Example> examples;
  for (size_t n = 0; n < novels.size(); ++n) {
    for (size_t i = 0; i < novels[n].quotes.size(); ++i) {
      const PreparedQuote &q = novels[n].quotes[i];
      std::vector<bool> pos = PositiveCandidates(q);
      bool any = false;
      for (bool b : pos) any = any || b;
      if (!any) {
        ++result.skipped;
        continue;
      }
      examples.push_back({n, i, std::move(pos)});
    }
  }
  result.trainable = examples.size();
  if (examples.empty()) throw Error("no quote has a candidate referring to its speaker");

  AdamW optimizer(config, model->params());
  std::vector<size_t> order(examples.size());
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    Rng rng(DeriveSeed({config.seed, Fingerprint("scorer-epoch"), static_cast<uint64_t>(epoch)}));
    rng.Shuffle(order);
    double total = 0.0;
    for (size_t start = 0; start < order.size(); start += config.batch_size) {
      const size_t end = std::min(order.size(), start + config.batch_size);
      const double weight = 1.0 / static_cast<double>(end - start);
      ScorerGradient grad = model->ZeroGradient();
      for (size_t b = start; b < end; ++b) {
        const Example &ex = examples[order[b]];
        const PreparedNovel &novel = novels[ex.novel];
        const PreparedQuote &q = novel.quotes[ex.quote];
        total += model->Loss(MakeScoringInput(novel, q, *model), ex.positives, &grad, weight);
      }
      optimizer.Step(grad, model->config().token_dim, &model->mutable_params());
      ++result.steps;
    }
    const double mean = total / static_cast<double>(order.size());
    result.epoch_loss.push_back(mean);
    if (on_epoch) on_epoch(epoch, mean);
  }
  return result;
}

}  // namespace qa
