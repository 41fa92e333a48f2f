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

#include "qa/embed/supcon.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qa/util/errors.h"
#include "qa/util/parallel.h"

namespace qa {

SupConResult SupConLoss(const std::vector<std::vector<double>> &embeddings,
                        const std::vector<size_t> &labels,
                        const std::vector<size_t> &groups, double temperature) {
  const size_t n = embeddings.size();
  if (labels.size() != n || (!groups.empty() && groups.size() != n)) {
    throw Error("supcon: embeddings, labels and groups differ in length");
  }
  if (!(temperature > 0)) throw Error("supcon: temperature must be positive");
  auto group = [&](size_t k) { return groups.empty() ? size_t{0} : groups[k]; };

  SupConResult r;
  r.grad.assign(n, std::vector<double>(n ? embeddings[0].size() : 0, 0.0));
  std::vector<double> coeff(n);  // d(L_a)/d(s_ak)
  std::vector<double> logits(n);
  double total = 0;
  for (size_t a = 0; a < n; ++a) {
    size_t positives = 0;
    double max_logit = -std::numeric_limits<double>::infinity();
    for (size_t k = 0; k < n; ++k) {
      if (k == a || group(k) != group(a)) continue;
      if (embeddings[k].size() != embeddings[a].size()) {
        throw Error("supcon: embeddings differ in dimension");
      }
      double s = 0;
      for (size_t i = 0; i < embeddings[a].size(); ++i) s += embeddings[a][i] * embeddings[k][i];
      logits[k] = s / temperature;
      max_logit = std::max(max_logit, logits[k]);
      if (labels[k] == labels[a]) ++positives;
    }
    if (positives == 0) continue;
    ++r.anchors;
    double z = 0;
    for (size_t k = 0; k < n; ++k) {
      if (k != a && group(k) == group(a)) z += std::exp(logits[k] - max_logit);
    }
    const double log_z = max_logit + std::log(z);
    double loss = 0;
    for (size_t k = 0; k < n; ++k) {
      coeff[k] = 0;
      if (k == a || group(k) != group(a)) continue;
      bool positive = labels[k] == labels[a];
      if (positive) loss -= (logits[k] - log_z) / positives;
      coeff[k] = (std::exp(logits[k] - log_z) - (positive ? 1.0 / positives : 0.0)) /
                 temperature;
    }
    total += loss;
    for (size_t k = 0; k < n; ++k) {
      if (coeff[k] == 0) continue;
      for (size_t i = 0; i < embeddings[a].size(); ++i) {
        r.grad[a][i] += coeff[k] * embeddings[k][i];
        r.grad[k][i] += coeff[k] * embeddings[a][i];
      }
    }
  }
  if (r.anchors == 0) throw Error("supcon: no anchor has a positive");
  r.loss = total / static_cast<double>(r.anchors);
  for (auto &row : r.grad) {
    for (double &v : row) v /= static_cast<double>(r.anchors);
  }
  return r;
}

template <typename Real>
BatchLoss ContrastiveLoss(const Projection<Real> &w, PoolingMode mode,
                          const ContrastiveBatch &batch, double temperature) {
  const size_t n = batch.collections.size();
  std::vector<EncodeTrace> traces(n);
  ParallelFor(n, [&](size_t k) { traces[k] = EncodeForward(w, mode, batch.collections[k]); });
  std::vector<std::vector<double>> embeddings(n);
  for (size_t k = 0; k < n; ++k) embeddings[k] = traces[k].out;
  SupConResult sc = SupConLoss(embeddings, batch.labels, batch.groups, temperature);

  std::vector<std::vector<RankOneTerm>> parts(n);
  ParallelFor(n, [&](size_t k) { EncodeBackward(traces[k], sc.grad[k], &parts[k]); });
  BatchLoss out;
  out.loss = sc.loss;
  for (auto &part : parts) {
    for (RankOneTerm &t : part) out.grad.push_back(std::move(t));
  }
  return out;
}

template BatchLoss ContrastiveLoss(const Projection<float> &, PoolingMode,
                                   const ContrastiveBatch &, double);
template BatchLoss ContrastiveLoss(const Projection<double> &, PoolingMode,
                                   const ContrastiveBatch &, double);

}  // namespace qa
