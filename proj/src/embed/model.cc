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

#include "qa/embed/model.h"

#include <cmath>
#include <fstream>
#include <sstream>

#include "qa/util/errors.h"
#include "qa/util/io.h"
#include "qa/util/random.h"

namespace qa {
namespace {

constexpr std::string_view kMagic = "QAEMB1";

double Dot(const std::vector<double> &a, const std::vector<double> &b) {
  double s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

SparseVector Normalized(SparseVector v) {
  double n = Norm(v);
  if (n > 0) {
    for (auto &e : v) e.second /= n;
  }
  return v;
}

// g projected off the direction of unit vector u and divided by norm:
// the backward pass of u = v / |v|.
std::vector<double> NormalizeBackward(const std::vector<double> &u, double norm,
                                      const std::vector<double> &g) {
  double ug = Dot(u, g);
  std::vector<double> out(g.size());
  for (size_t i = 0; i < g.size(); ++i) out[i] = (g[i] - u[i] * ug) / norm;
  return out;
}

}  // namespace

ColumnGradient Materialize(const std::vector<RankOneTerm> &terms) {
  ColumnGradient grad;
  for (const RankOneTerm &t : terms) {
    for (const auto &[j, v] : t.x) {
      std::vector<double> &col = grad[j];
      if (col.empty()) col.assign(t.dz.size(), 0.0);
      for (size_t i = 0; i < t.dz.size(); ++i) col[i] += v * t.dz[i];
    }
  }
  return grad;
}

std::string_view PoolingModeName(PoolingMode mode) {
  return mode == PoolingMode::kMeanPool ? "mean-pool" : "collection";
}

PoolingMode ParsePoolingMode(std::string_view name) {
  if (name == "collection") return PoolingMode::kCollection;
  if (name == "mean-pool") return PoolingMode::kMeanPool;
  throw ValidationError("unknown pooling mode '" + std::string(name) + "'");
}

void EmbedderConfig::Validate() const {
  features.Validate();
  if (dim == 0) throw ValidationError("embedding dimension must be positive");
  if (!(init_scale > 0) || !std::isfinite(init_scale)) {
    throw ValidationError("init scale must be positive");
  }
}

template <typename Real>
EncodeTrace EncodeForward(const Projection<Real> &w, PoolingMode mode,
                          const std::vector<SparseVector> &features) {
  EncodeTrace t;
  t.mode = mode;
  t.out.assign(w.dim, 0.0);
  if (mode == PoolingMode::kCollection) {
    SparseVector sum;
    for (const SparseVector &f : features) AddInto(sum, f);
    if (sum.empty()) return t;
    t.inputs.push_back(Normalized(std::move(sum)));
  } else {
    for (const SparseVector &f : features) {
      if (!f.empty()) t.inputs.push_back(Normalized(f));
    }
    if (t.inputs.empty()) return t;
  }
  for (const SparseVector &x : t.inputs) {
    t.z.push_back(w.Apply(x));
    t.z_norm.push_back(std::sqrt(Dot(t.z.back(), t.z.back())));
  }
  if (mode == PoolingMode::kCollection) {
    t.pooled = t.z[0];
  } else {
    t.pooled.assign(w.dim, 0.0);
    for (size_t k = 0; k < t.z.size(); ++k) {
      if (t.z_norm[k] == 0) continue;
      for (uint32_t i = 0; i < w.dim; ++i) t.pooled[i] += t.z[k][i] / t.z_norm[k];
    }
    for (double &v : t.pooled) v /= static_cast<double>(t.z.size());
  }
  t.pooled_norm = std::sqrt(Dot(t.pooled, t.pooled));
  if (t.pooled_norm == 0) return t;
  for (uint32_t i = 0; i < w.dim; ++i) t.out[i] = t.pooled[i] / t.pooled_norm;
  return t;
}

void EncodeBackward(const EncodeTrace &t, const std::vector<double> &grad_out,
                    std::vector<RankOneTerm> *terms) {
  if (t.pooled_norm == 0) return;
  std::vector<double> d_pooled = NormalizeBackward(t.out, t.pooled_norm, grad_out);
  if (t.mode == PoolingMode::kCollection) {
    terms->push_back({t.inputs[0], std::move(d_pooled)});
    return;
  }
  const size_t dim = d_pooled.size();
  const double n = static_cast<double>(t.z.size());
  for (size_t k = 0; k < t.z.size(); ++k) {
    if (t.z_norm[k] == 0) continue;
    std::vector<double> e(dim), de(dim);
    for (size_t i = 0; i < dim; ++i) {
      e[i] = t.z[k][i] / t.z_norm[k];
      de[i] = d_pooled[i] / n;
    }
    terms->push_back({t.inputs[k], NormalizeBackward(e, t.z_norm[k], de)});
  }
}

template EncodeTrace EncodeForward(const Projection<float> &, PoolingMode,
                                   const std::vector<SparseVector> &);
template EncodeTrace EncodeForward(const Projection<double> &, PoolingMode,
                                   const std::vector<SparseVector> &);

EmbeddingModel EmbeddingModel::Random(const EmbedderConfig &config, uint64_t seed) {
  config.Validate();
  EmbeddingModel model;
  model.config_ = config;
  model.projection_ = Projection<float>(config.dim, config.features.hash_dim);
  Rng rng(DeriveSeed({seed, Fingerprint("embedder-init")}));
  for (float &v : model.projection_.weights) {
    v = static_cast<float>(config.init_scale * rng.Normal());
  }
  return model;
}

std::vector<float> EmbeddingModel::Encode(const std::vector<std::string> &utterances) const {
  if (utterances.empty()) throw Error("cannot encode an empty collection");
  std::vector<SparseVector> features;
  features.reserve(utterances.size());
  for (const std::string &u : utterances) features.push_back(Features(u));
  return EncodeFeatures(features);
}

std::vector<float> EmbeddingModel::EncodeFeatures(
    const std::vector<SparseVector> &features) const {
  if (features.empty()) throw Error("cannot encode an empty collection");
  EncodeTrace t = EncodeForward(projection_, config_.mode, features);
  return std::vector<float>(t.out.begin(), t.out.end());
}

void EmbeddingModel::Save(const std::filesystem::path &path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  BinaryWriter w(&out);
  const FeatureConfig &f = config_.features;
  w.Bytes(kMagic);
  w.U32(config_.dim);
  w.U32(f.hash_dim);
  w.String(PoolingModeName(config_.mode));
  w.U32(static_cast<uint32_t>(f.max_tokens));
  w.U32(static_cast<uint32_t>(f.ngram_orders.size()));
  for (int n : f.ngram_orders) w.U32(static_cast<uint32_t>(n));
  w.String(f.function_words);
  w.U32(static_cast<uint32_t>(f.length_buckets.size()));
  for (size_t b : f.length_buckets) w.U32(static_cast<uint32_t>(b));
  std::vector<float> row(f.hash_dim);
  for (uint32_t i = 0; i < config_.dim; ++i) {
    for (uint32_t j = 0; j < f.hash_dim; ++j) row[j] = projection_.At(i, j);
    w.F32Array(row);
  }
  if (!out) throw Error("error writing " + path.string());
}

EmbeddingModel EmbeddingModel::Load(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  BinaryReader r(&in, path.string());
  if (r.Bytes(kMagic.size()) != kMagic) throw Error(path.string() + ": not an embedder model");
  EmbeddingModel model;
  EmbedderConfig &c = model.config_;
  c.dim = r.U32();
  c.features.hash_dim = r.U32();
  c.mode = ParsePoolingMode(r.String());
  c.features.max_tokens = r.U32();
  c.features.ngram_orders.resize(r.U32());
  for (int &n : c.features.ngram_orders) n = static_cast<int>(r.U32());
  c.features.function_words = r.String();
  c.features.length_buckets.resize(r.U32());
  for (size_t &b : c.features.length_buckets) b = r.U32();
  try {
    c.Validate();
  } catch (const ValidationError &e) {
    throw Error(path.string() + ": " + e.what());
  }
  model.projection_ = Projection<float>(c.dim, c.features.hash_dim);
  std::vector<float> row(c.features.hash_dim);
  for (uint32_t i = 0; i < c.dim; ++i) {
    r.F32Array(row);
    for (uint32_t j = 0; j < c.features.hash_dim; ++j) {
      if (!std::isfinite(row[j])) throw Error(path.string() + ": non-finite weight");
      model.projection_.At(i, j) = row[j];
    }
  }
  return model;
}

}  // namespace qa
