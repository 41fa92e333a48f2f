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
#include <cstring>
#include <filesystem>

#include <gtest/gtest.h>

#include "../gradcheck.h"
#include "qa/embed/vectors.h"
#include "qa/util/errors.h"
#include "qa/util/io.h"
#include "qa/util/random.h"

namespace qa {
namespace {

EmbedderConfig SmallConfig(PoolingMode mode) {
  EmbedderConfig c;
  c.dim = 16;
  c.features.hash_dim = 1024;
  c.mode = mode;
  c.init_scale = 0.1;
  return c;
}

const std::vector<std::string> kLines = {"Aye, my lord!", "What say you, sirrah?",
                                         "Indeed it is quite so."};

void ExpectNear(const std::vector<float> &a, const std::vector<float> &b, double tol) {
  ASSERT_EQ(a.size(), b.size());
  for (size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], tol) << i;
}

double L2(const std::vector<float> &v) {
  double s = 0;
  for (float x : v) s += double{x} * x;
  return std::sqrt(s);
}

class ModelModeTest : public ::testing::TestWithParam<PoolingMode> {};

TEST_P(ModelModeTest, OutputIsUnitNorm) {
  auto model = EmbeddingModel::Random(SmallConfig(GetParam()), 3);
  EXPECT_NEAR(L2(model.Encode(kLines)), 1.0, 1e-6);
}

TEST_P(ModelModeTest, PermutationInvariant) {
  auto model = EmbeddingModel::Random(SmallConfig(GetParam()), 3);
  std::vector<std::string> reversed(kLines.rbegin(), kLines.rend());
  ExpectNear(model.Encode(kLines), model.Encode(reversed), 1e-6);
}

TEST_P(ModelModeTest, DuplicationInvariant) {
  auto model = EmbeddingModel::Random(SmallConfig(GetParam()), 3);
  std::vector<std::string> tripled;
  for (int k = 0; k < 3; ++k) tripled.insert(tripled.end(), kLines.begin(), kLines.end());
  ExpectNear(model.Encode(kLines), model.Encode(tripled), 1e-6);
  ExpectNear(model.Encode({kLines[0]}), model.Encode({kLines[0], kLines[0]}), 1e-6);
}

TEST_P(ModelModeTest, ZeroSentinel) {
  auto model = EmbeddingModel::Random(SmallConfig(GetParam()), 3);
  std::vector<float> z = model.Encode({"", "  "});
  EXPECT_EQ(z, std::vector<float>(16, 0.0f));
  EXPECT_EQ(Cosine(z, model.Encode(kLines)), 0.0);
}

TEST_P(ModelModeTest, EmptyCollectionIsAnError) {
  auto model = EmbeddingModel::Random(SmallConfig(GetParam()), 3);
  EXPECT_THROW(model.Encode({}), Error);
}

INSTANTIATE_TEST_SUITE_P(Modes, ModelModeTest,
                         ::testing::Values(PoolingMode::kCollection, PoolingMode::kMeanPool));

TEST(ModelTest, SingletonCollectionModesAgree) {
  auto a = EmbeddingModel::Random(SmallConfig(PoolingMode::kCollection), 4);
  auto b = EmbeddingModel::Random(SmallConfig(PoolingMode::kMeanPool), 4);
  ASSERT_EQ(a.projection().weights, b.projection().weights);
  for (const std::string &line : kLines) ExpectNear(a.Encode({line}), b.Encode({line}), 1e-6);
}

// With d = F and W = I the collection encoder reduces to the normalized sum
// of the hashed feature vectors, computed here densely.
TEST(ModelTest, IdentityProjectionOracle) {
  EmbedderConfig config = SmallConfig(PoolingMode::kCollection);
  config.dim = 64;
  config.features.hash_dim = 64;
  auto model = EmbeddingModel::Random(config, 1);
  auto &w = model.mutable_projection();
  for (uint32_t i = 0; i < 64; ++i) {
    for (uint32_t j = 0; j < 64; ++j) w.At(i, j) = i == j ? 1.0f : 0.0f;
  }
  std::vector<double> dense(64, 0.0);
  for (const std::string &line : kLines) {
    for (const auto &[term, count] : ExtractFeatureTerms(line, config.features)) {
      auto [j, sign] = HashFeature(term, 64);
      dense[j] += sign * count;
    }
  }
  double norm = 0;
  for (double v : dense) norm += v * v;
  norm = std::sqrt(norm);
  std::vector<float> expected(64);
  for (size_t i = 0; i < 64; ++i) expected[i] = static_cast<float>(dense[i] / norm);
  ExpectNear(model.Encode(kLines), expected, 1e-6);
}

TEST(ModelTest, MeanPoolIsMeanOfUtteranceVectors) {
  auto model = EmbeddingModel::Random(SmallConfig(PoolingMode::kMeanPool), 2);
  std::vector<double> mean(16, 0.0);
  for (const std::string &line : kLines) {
    std::vector<float> v = model.Encode({line});
    for (size_t i = 0; i < 16; ++i) mean[i] += v[i] / 3.0;
  }
  double norm = 0;
  for (double v : mean) norm += v * v;
  std::vector<float> expected(16);
  for (size_t i = 0; i < 16; ++i) expected[i] = static_cast<float>(mean[i] / std::sqrt(norm));
  ExpectNear(model.Encode(kLines), expected, 1e-6);
}

TEST(ModelTest, RandomInitIsSeeded) {
  auto a = EmbeddingModel::Random(SmallConfig(PoolingMode::kCollection), 9);
  auto b = EmbeddingModel::Random(SmallConfig(PoolingMode::kCollection), 9);
  auto c = EmbeddingModel::Random(SmallConfig(PoolingMode::kCollection), 10);
  EXPECT_TRUE(a == b);
  EXPECT_FALSE(a == c);
}

TEST(ModelTest, SaveLoadRoundTrip) {
  auto path = std::filesystem::temp_directory_path() / "qa_model_test.bin";
  EmbedderConfig config = SmallConfig(PoolingMode::kMeanPool);
  config.features.ngram_orders = {2, 4};
  auto model = EmbeddingModel::Random(config, 5);
  model.Save(path);
  auto loaded = EmbeddingModel::Load(path);
  EXPECT_TRUE(model == loaded);
  EXPECT_EQ(loaded.config().features.ngram_orders, (std::vector<int>{2, 4}));
  ExpectNear(model.Encode(kLines), loaded.Encode(kLines), 0);
  // The file is magic, config, then the row-major float32 matrix.
  std::string bytes = ReadFile(path);
  EXPECT_EQ(bytes.substr(0, 6), "QAEMB1");
  float last;
  std::memcpy(&last, bytes.data() + bytes.size() - 4, 4);
  EXPECT_EQ(last, model.projection().At(15, 1023));
  std::filesystem::remove(path);
}

TEST(ModelTest, LoadRejectsOtherFiles) {
  auto path = std::filesystem::temp_directory_path() / "qa_model_bad.bin";
  WriteFile(path, "QASCR1 not an embedder");
  EXPECT_THROW(EmbeddingModel::Load(path), Error);
  WriteFile(path, "QAEMB1");
  EXPECT_THROW(EmbeddingModel::Load(path), Error);
  std::filesystem::remove(path);
}

// Gradient of a linear functional of the encoder output wrt W, against
// central differences in double precision.
TEST(ModelTest, EncoderBackwardMatchesFiniteDifferences) {
  for (PoolingMode mode : {PoolingMode::kCollection, PoolingMode::kMeanPool}) {
    FeatureConfig fc;
    fc.hash_dim = 12;
    Projection<double> w(5, 12);
    Rng rng(8);
    for (double &v : w.weights) v = rng.Normal();
    std::vector<SparseVector> features;
    for (const std::string &line : kLines) features.push_back(ExtractFeatures(line, fc));
    std::vector<double> probe(5);
    for (double &v : probe) v = rng.Normal();

    auto f = [&](const std::vector<double> &weights) {
      Projection<double> p = w;
      p.weights = weights;
      EncodeTrace t = EncodeForward(p, mode, features);
      double s = 0;
      for (size_t i = 0; i < 5; ++i) s += probe[i] * t.out[i];
      return s;
    };
    std::vector<RankOneTerm> terms;
    EncodeBackward(EncodeForward(w, mode, features), probe, &terms);
    std::vector<double> analytic(w.weights.size(), 0.0);
    for (const auto &[j, col] : Materialize(terms)) {
      for (size_t i = 0; i < 5; ++i) analytic[size_t{j} * 5 + i] = col[i];
    }
    std::vector<double> numeric = testing::NumericGradient(w.weights, f);
    EXPECT_LT(testing::RelativeError(analytic, numeric), 1e-6) << PoolingModeName(mode);
  }
}

}  // namespace
}  // namespace qa
