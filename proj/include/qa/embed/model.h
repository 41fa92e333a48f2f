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

#ifndef QA_EMBED_MODEL_H_
#define QA_EMBED_MODEL_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "qa/embed/features.h"

namespace qa {

enum class PoolingMode { kCollection, kMeanPool };

std::string_view PoolingModeName(PoolingMode mode);
PoolingMode ParsePoolingMode(std::string_view name);

struct EmbedderConfig {
  FeatureConfig features;
  uint32_t dim = 512;
  PoolingMode mode = PoolingMode::kCollection;
  // Standard deviation of the initial projection weights. Output vectors
  // are normalized, so the effective step size of gradient descent scales
  // with 1 / init_scale^2; the default is sized for a learning rate of 2e-5.
  double init_scale = 5e-5;

  void Validate() const;
};

// Linear map from the hashed feature space to R^dim, stored feature-major
// (the column of feature j is contiguous) so sparse inputs touch only the
// columns they use.
template <typename Real>
struct Projection {
  uint32_t dim = 0;
  uint32_t features = 0;
  std::vector<Real> weights;

  Projection() = default;
  Projection(uint32_t d, uint32_t f) : dim(d), features(f), weights(size_t{d} * f) {}

  Real *Column(uint32_t j) { return weights.data() + size_t{j} * dim; }
  const Real *Column(uint32_t j) const { return weights.data() + size_t{j} * dim; }
  Real &At(uint32_t row, uint32_t col) { return weights[size_t{col} * dim + row]; }
  Real At(uint32_t row, uint32_t col) const { return weights[size_t{col} * dim + row]; }

  // out = W x.
  std::vector<double> Apply(const SparseVector &x) const {
    std::vector<double> out(dim, 0.0);
    for (const auto &[j, v] : x) {
      const Real *col = Column(j);
      for (uint32_t i = 0; i < dim; ++i) out[i] += v * col[i];
    }
    return out;
  }
};

// Gradient restricted to the columns an update touched.
using ColumnGradient = std::map<uint32_t, std::vector<double>>;

// One outer-product term x * dz^T of a projection gradient; summing the
// terms of a batch gives d(loss)/dW.
struct RankOneTerm {
  SparseVector x;
  std::vector<double> dz;
};

ColumnGradient Materialize(const std::vector<RankOneTerm> &terms);

// Intermediate values of one collection encoding, kept for backprop.
struct EncodeTrace {
  PoolingMode mode = PoolingMode::kCollection;
  std::vector<SparseVector> inputs;  // unit-norm feature vectors
  std::vector<std::vector<double>> z;  // W x per input
  std::vector<double> z_norm;
  std::vector<double> pooled;  // mean of normalized z (mean-pool mode)
  double pooled_norm = 0;
  std::vector<double> out;  // unit vector or all zeros
};

// Encodes a collection given each utterance's raw feature vector.
//   collection: x = normalize(sum f_i), out = normalize(W x)
//   mean-pool:  out = normalize(mean_i normalize(W normalize(f_i)))
// Utterances without features are ignored; a collection with none encodes
// to the zero vector.
template <typename Real>
EncodeTrace EncodeForward(const Projection<Real> &w, PoolingMode mode,
                          const std::vector<SparseVector> &features);

// Appends the terms of d(loss)/dW given d(loss)/d(out).
void EncodeBackward(const EncodeTrace &trace, const std::vector<double> &grad_out,
                    std::vector<RankOneTerm> *terms);

class EmbeddingModel {
 public:
  EmbeddingModel() = default;
  // Projection weights drawn from N(0, init_scale^2).
  static EmbeddingModel Random(const EmbedderConfig &config, uint64_t seed);

  const EmbedderConfig &config() const { return config_; }
  uint32_t dim() const { return config_.dim; }
  const Projection<float> &projection() const { return projection_; }
  Projection<float> &mutable_projection() { return projection_; }

  SparseVector Features(std::string_view utterance) const {
    return ExtractFeatures(utterance, config_.features);
  }
  // Throws Error on an empty collection.
  std::vector<float> Encode(const std::vector<std::string> &utterances) const;
  std::vector<float> EncodeFeatures(const std::vector<SparseVector> &features) const;

  // Binary format: "QAEMB1", config, then the dim x F projection as
  // little-endian float32 in row-major order.
  void Save(const std::filesystem::path &path) const;
  static EmbeddingModel Load(const std::filesystem::path &path);

  bool operator==(const EmbeddingModel &other) const {
    return config_.features == other.config_.features && config_.dim == other.config_.dim &&
           config_.mode == other.config_.mode &&
           projection_.weights == other.projection_.weights;
  }

 private:
  EmbedderConfig config_;
  Projection<float> projection_;
};

}  // namespace qa

#endif  // QA_EMBED_MODEL_H_
