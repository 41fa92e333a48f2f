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

#ifndef QA_EMBED_SUPCON_H_
#define QA_EMBED_SUPCON_H_

#include <cstddef>
#include <vector>

#include "qa/embed/model.h"

namespace qa {

struct SupConResult {
  double loss = 0;
  // d(loss)/d(embedding k), one row per embedding.
  std::vector<std::vector<double>> grad;
  size_t anchors = 0;  // anchors that had at least one positive
};

// Supervised contrastive loss with the average over positives outside the
// log. For anchor a with same-label positives P(a) and comparison set A(a),
// both restricted to the anchor's group and excluding a itself:
//
//   L_a = -1/|P(a)| sum_{p in P(a)} log(exp(s_ap/tau) / sum_{k in A(a)} exp(s_ak/tau))
//
// with s the dot product. The loss is the mean of L_a over anchors with a
// positive. groups may be empty (one group). Throws Error when no anchor
// has a positive, on mismatched sizes, or when temperature <= 0.
SupConResult SupConLoss(const std::vector<std::vector<double>> &embeddings,
                        const std::vector<size_t> &labels,
                        const std::vector<size_t> &groups, double temperature);

// A batch of utterance collections for one gradient step.
struct ContrastiveBatch {
  std::vector<std::vector<SparseVector>> collections;  // raw features
  std::vector<size_t> labels;
  std::vector<size_t> groups;
};

struct BatchLoss {
  double loss = 0;
  std::vector<RankOneTerm> grad;  // sums to d(loss)/dW
};

// Encodes every collection with w, applies SupConLoss and backpropagates to
// the projection.
template <typename Real>
BatchLoss ContrastiveLoss(const Projection<Real> &w, PoolingMode mode,
                          const ContrastiveBatch &batch, double temperature);

}  // namespace qa

#endif  // QA_EMBED_SUPCON_H_
