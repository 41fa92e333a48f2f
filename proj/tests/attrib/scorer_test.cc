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

#include "qa/attrib/scorer.h"

#include <algorithm>
#include <cmath>
#include <filesystem>

#include <gtest/gtest.h>

#include "../gradcheck.h"
#include "qa/attrib/pipeline.h"
#include "qa/util/errors.h"
#include "qa/util/random.h"

namespace qa {
namespace {

ScorerConfig SmallConfig(ScorerArity arity, MentionMode mode) {
  ScorerConfig c;
  c.arity = arity;
  c.mention_mode = mode;
  c.vocab = 64;
  c.token_dim = 4;
  c.radius = 2;
  c.hidden = 6;
  c.char_dim = 3;
  return c;
}

// Random weights everywhere, including the parts that start at zero.
ScorerModel RandomizedModel(const ScorerConfig &config, uint64_t seed) {
  ScorerModel m = ScorerModel::Random(config, seed);
  Rng rng(seed + 1000);
  for (double &x : m.mutable_params().position) x = 0.3 * rng.Normal();
  for (double &x : m.mutable_params().b1) x = 0.3 * rng.Normal();
  for (double &x : m.mutable_params().embed) x = rng.Normal();
  return m;
}

ContextToken Word(const std::string &text) {
  return {text, ContextTokenKind::kWord, 0, 0};
}

struct Instance {
  ContextSegment segment;
  std::vector<CandidateMention> candidates;
  std::vector<bool> positives;
  CharVectors characters;
  std::vector<float> u;
};

Instance RandomInstance(Rng &rng, size_t candidates, uint32_t char_dim) {
  static const char *kWords[] = {"said", "He", "the", ",", "Anne", "went", "7th", ".", "Bill"};
  Instance in;
  const size_t n = 4 + rng.Uniform(20);
  in.segment.quote_pos = rng.Uniform(n);
  for (size_t i = 0; i < n; ++i) {
    ContextToken t = Word(kWords[rng.Uniform(9)]);
    if (t.text == "," || t.text == ".") t.kind = ContextTokenKind::kPunct;
    if (i == in.segment.quote_pos) t = {"[QUOTE]", ContextTokenKind::kQuote, 0, 0};
    else if (rng.Bernoulli(0.1)) t = {"[ALTQUOTE]", ContextTokenKind::kAltQuote, 0, 0};
    t.doc_begin = t.doc_end = i;
    in.segment.tokens.push_back(t);
  }
  in.segment.window_end = n - 1;
  const char *entities[] = {"a", "b", "c"};
  for (size_t k = 0; k < candidates; ++k) {
    CandidateMention c;
    c.begin = rng.Uniform(n);
    c.end = std::min(n - 1, c.begin + rng.Uniform(3));
    c.entity_id = entities[rng.Uniform(3)];
    in.candidates.push_back(c);
    in.positives.push_back(rng.Bernoulli(0.4));
  }
  in.positives[rng.Uniform(candidates)] = true;
  for (const char *e : {"a", "b"}) {  // "c" has no vector
    std::vector<float> v(char_dim);
    for (float &x : v) x = static_cast<float>(rng.Normal());
    in.characters[e] = v;
  }
  in.u.resize(char_dim);
  for (float &x : in.u) x = static_cast<float>(rng.Normal());
  return in;
}

ScoringInput Input(const Instance &in, const ScorerModel &m) {
  ScoringInput s;
  s.segment = &in.segment;
  s.candidates = &in.candidates;
  if (m.config().arity == ScorerArity::kAugmented) {
    s.characters = &in.characters;
    s.quote_vector = in.u;
  }
  return s;
}

// Dense reference: builds H and every input vector explicitly.
std::vector<double> OracleScores(const ScorerModel &m, const Instance &in) {
  const ScorerConfig &c = m.config();
  const ScorerParams &p = m.params();
  const size_t d = c.token_dim, n = in.segment.tokens.size();
  std::vector<std::vector<double>> e(n, std::vector<double>(d, 0.0));
  for (size_t i = 0; i < n; ++i) {
    auto rows = m.TokenRows(in.segment.tokens[i]);
    for (uint32_t r : rows) {
      for (size_t j = 0; j < d; ++j) e[i][j] += p.embed[r * d + j] / rows.size();
    }
  }
  std::vector<std::vector<double>> h(n, std::vector<double>(d, 0.0));
  for (size_t i = 0; i < n; ++i) {
    size_t count = 0;
    for (size_t k = 0; k < n; ++k) {
      if (k + c.radius < i || k > i + c.radius) continue;
      ++count;
      for (size_t j = 0; j < d; ++j) h[i][j] += e[k][j];
    }
    const uint32_t b = PositionBucket(long(i) - long(in.segment.quote_pos));
    for (size_t j = 0; j < d; ++j) h[i][j] = h[i][j] / count + p.position[b * d + j];
  }
  std::vector<double> out;
  for (const CandidateMention &cand : in.candidates) {
    std::vector<double> x = h[in.segment.quote_pos];
    if (c.mention_mode == MentionMode::kFirstLast) {
      x.insert(x.end(), h[cand.begin].begin(), h[cand.begin].end());
      x.insert(x.end(), h[cand.end].begin(), h[cand.end].end());
    } else {
      for (size_t j = 0; j < d; ++j) {
        double s = 0;
        for (size_t i = cand.begin; i <= cand.end; ++i) s += h[i][j];
        x.push_back(s / (cand.end - cand.begin + 1));
      }
    }
    if (c.arity == ScorerArity::kAugmented) {
      auto it = in.characters.find(cand.entity_id);
      for (size_t j = 0; j < c.char_dim; ++j) {
        x.push_back(it == in.characters.end() ? 0.0 : it->second[j]);
      }
      for (float v : in.u) x.push_back(v);
    }
    EXPECT_EQ(x.size(), c.InputDim());
    double score = 0;
    for (size_t k = 0; k < c.hidden; ++k) {
      double a = p.b1[k];
      for (size_t j = 0; j < x.size(); ++j) a += p.w1[k * x.size() + j] * x[j];
      score += p.w2[k] * std::max(0.0, a);
    }
    out.push_back(score);
  }
  return out;
}

std::vector<double *> ParamPointers(ScorerParams &p) {
  std::vector<double *> out;
  for (std::vector<double> *v : {&p.embed, &p.position, &p.w1, &p.b1, &p.w2}) {
    for (double &x : *v) out.push_back(&x);
  }
  return out;
}

std::vector<double> Flatten(const ScorerGradient &g, const ScorerModel &m) {
  std::vector<double> embed(m.params().embed.size(), 0.0);
  const size_t d = m.config().token_dim;
  for (const auto &[row, v] : g.embed) {
    for (size_t j = 0; j < d; ++j) embed[row * d + j] = v[j];
  }
  std::vector<double> out = embed;
  for (const std::vector<double> *v : {&g.position, &g.w1, &g.b1, &g.w2}) {
    out.insert(out.end(), v->begin(), v->end());
  }
  return out;
}

TEST(PositionBucketTest, Buckets) {
  EXPECT_EQ(PositionBucket(0), 10u);
  EXPECT_EQ(PositionBucket(-1), 9u);
  EXPECT_EQ(PositionBucket(6), 16u);
  EXPECT_EQ(PositionBucket(7), 17u);
  EXPECT_EQ(PositionBucket(12), 17u);
  EXPECT_EQ(PositionBucket(13), 18u);
  EXPECT_EQ(PositionBucket(-50), 1u);
  EXPECT_EQ(PositionBucket(-51), 0u);
  EXPECT_EQ(PositionBucket(100000), 20u);
}

TEST(ScorerTest, TokenRowsShareWordAcrossCase) {
  ScorerModel m = ScorerModel::Random(SmallConfig(ScorerArity::kContextOnly, MentionMode::kFirstLast), 1);
  auto lower = m.TokenRows(Word("said"));
  auto upper = m.TokenRows(Word("Said"));
  ASSERT_EQ(lower.size(), 2u);
  EXPECT_EQ(lower[0], upper[0]);
  EXPECT_NE(lower[1], upper[1]);
  EXPECT_EQ(m.TokenRows({"[QUOTE]", ContextTokenKind::kQuote, 0, 0}).size(), 1u);
  EXPECT_NE(m.TokenRows({"[QUOTE]", ContextTokenKind::kQuote, 0, 0}),
            m.TokenRows({"[ALTQUOTE]", ContextTokenKind::kAltQuote, 0, 0}));
}

TEST(EncodeContextTest, SingleTokenSegmentIsTokenEmbedding) {
  ScorerModel m = ScorerModel::Random(ScorerConfig{}, 3);
  ContextSegment seg;
  seg.tokens = {{"[QUOTE]", ContextTokenKind::kQuote, 0, 0}};
  auto h = m.EncodeContext(seg);
  ASSERT_EQ(h.size(), 1u);
  EXPECT_EQ(h[0], m.TokenEmbedding(seg.tokens[0]));
}

TEST(EncodeContextTest, LocalityAndDeterminism) {
  ScorerModel m = RandomizedModel(SmallConfig(ScorerArity::kContextOnly, MentionMode::kFirstLast), 4);
  Rng rng(5);
  Instance in = RandomInstance(rng, 1, 3);
  while (in.segment.tokens.size() < 12) in = RandomInstance(rng, 1, 3);
  const size_t pos = 5;
  ContextSegment permuted = in.segment;
  // Shuffle everything outside [pos - 2, pos + 2] that is not [QUOTE].
  std::vector<size_t> outside;
  for (size_t i = 0; i < permuted.tokens.size(); ++i) {
    if ((i + 2 < pos || i > pos + 2) && i != permuted.quote_pos) outside.push_back(i);
  }
  std::vector<ContextToken> moved;
  for (size_t i : outside) moved.push_back(permuted.tokens[i]);
  rng.Shuffle(moved);
  for (size_t k = 0; k < outside.size(); ++k) permuted.tokens[outside[k]] = moved[k];
  EXPECT_EQ(m.ContextAt(in.segment, pos), m.ContextAt(permuted, pos));
  EXPECT_EQ(m.EncodeContext(in.segment), m.EncodeContext(in.segment));
}

TEST(MentionReprTest, Modes) {
  std::vector<std::vector<double>> h = {{1, 2}, {3, 4}, {5, 6}};
  EXPECT_EQ(ScorerModel::MentionRepr(h, 1, 1, MentionMode::kMean), (std::vector<double>{3, 4}));
  EXPECT_EQ(ScorerModel::MentionRepr(h, 1, 1, MentionMode::kFirstLast),
            (std::vector<double>{3, 4, 3, 4}));
  EXPECT_EQ(ScorerModel::MentionRepr(h, 0, 1, MentionMode::kMean), (std::vector<double>{2, 3}));
  EXPECT_EQ(ScorerModel::MentionRepr(h, 0, 2, MentionMode::kFirstLast),
            (std::vector<double>{1, 2, 5, 6}));
  EXPECT_THROW(ScorerModel::MentionRepr(h, 2, 3, MentionMode::kMean), Error);
}

TEST(MentionReprTest, MeanMatchesDenseOracle) {
  Rng rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    const size_t n = 1 + rng.Uniform(10), d = 1 + rng.Uniform(6);
    std::vector<std::vector<double>> h(n, std::vector<double>(d));
    for (auto &row : h) for (double &x : row) x = rng.Normal();
    const size_t b = rng.Uniform(n), e = b + rng.Uniform(n - b);
    // Mean as (1/|m|) * indicator^T H.
    std::vector<double> expected(d, 0.0);
    for (size_t i = 0; i < n; ++i) {
      const double w = (i >= b && i <= e) ? 1.0 / (e - b + 1) : 0.0;
      for (size_t j = 0; j < d; ++j) expected[j] += w * h[i][j];
    }
    auto got = ScorerModel::MentionRepr(h, b, e, MentionMode::kMean);
    for (size_t j = 0; j < d; ++j) EXPECT_NEAR(got[j], expected[j], 1e-12);
  }
}

TEST(ScoreTest, MatchesDenseOracle) {
  Rng rng(7);
  for (ScorerArity arity : {ScorerArity::kContextOnly, ScorerArity::kAugmented}) {
    for (MentionMode mode : {MentionMode::kFirstLast, MentionMode::kMean}) {
      ScorerModel m = RandomizedModel(SmallConfig(arity, mode), 8);
      for (int trial = 0; trial < 10; ++trial) {
        Instance in = RandomInstance(rng, 4, 3);
        auto got = m.ScoreCandidates(Input(in, m));
        auto expected = OracleScores(m, in);
        ASSERT_EQ(got.size(), expected.size());
        for (size_t k = 0; k < got.size(); ++k) EXPECT_NEAR(got[k], expected[k], 1e-6);
      }
    }
  }
}

TEST(ScoreTest, SingleCandidateScoreAgreesWithBatch) {
  ScorerModel m = RandomizedModel(SmallConfig(ScorerArity::kAugmented, MentionMode::kFirstLast), 9);
  Rng rng(10);
  Instance in = RandomInstance(rng, 3, 3);
  auto h = m.EncodeContext(in.segment);
  auto batch = m.ScoreCandidates(Input(in, m));
  const std::vector<float> zero(3, 0.0f);
  for (size_t k = 0; k < in.candidates.size(); ++k) {
    const CandidateMention &c = in.candidates[k];
    auto it = in.characters.find(c.entity_id);
    std::span<const float> v = it == in.characters.end() ? std::span<const float>(zero)
                                                         : std::span<const float>(it->second);
    EXPECT_NEAR(m.Score(h[in.segment.quote_pos],
                        ScorerModel::MentionRepr(h, c.begin, c.end, MentionMode::kFirstLast), v, in.u),
                batch[k], 1e-12);
  }
}

TEST(ScoreTest, ZeroOutputWeightsGiveUniformSoftmax) {
  ScorerModel m = RandomizedModel(SmallConfig(ScorerArity::kContextOnly, MentionMode::kFirstLast), 11);
  std::fill(m.mutable_params().w2.begin(), m.mutable_params().w2.end(), 0.0);
  Rng rng(12);
  Instance in = RandomInstance(rng, 5, 3);
  for (double s : m.ScoreCandidates(Input(in, m))) EXPECT_EQ(s, 0.0);
  for (double p : Softmax(m.ScoreCandidates(Input(in, m)))) EXPECT_NEAR(p, 0.2, 1e-15);
}

TEST(ScoreTest, DimensionMismatchThrows) {
  ScorerModel aug = RandomizedModel(SmallConfig(ScorerArity::kAugmented, MentionMode::kFirstLast), 13);
  ScorerModel ctx = RandomizedModel(SmallConfig(ScorerArity::kContextOnly, MentionMode::kFirstLast), 13);
  Rng rng(14);
  Instance in = RandomInstance(rng, 2, 3);
  in.u.push_back(1.0f);
  EXPECT_THROW(aug.ScoreCandidates(Input(in, aug)), Error);
  in.u.pop_back();
  in.characters["a"].push_back(1.0f);
  in.candidates[0].entity_id = "a";
  EXPECT_THROW(aug.ScoreCandidates(Input(in, aug)), Error);
  const std::vector<double> hq(4, 0.0), hm(8, 0.0);
  const std::vector<float> v(3, 0.0f);
  EXPECT_THROW(ctx.Score(hq, hm, v, v), Error);
  EXPECT_THROW(aug.Score(hq, hm, {}, {}), Error);
  EXPECT_THROW(ctx.Score(hq, std::vector<double>(4, 0.0), {}, {}), Error);
}

TEST(ScoreTest, MissingCharacterScoresWithZeroVector) {
  ScorerModel m = RandomizedModel(SmallConfig(ScorerArity::kAugmented, MentionMode::kFirstLast), 15);
  Rng rng(16);
  Instance in = RandomInstance(rng, 3, 3);
  for (auto &c : in.candidates) c.entity_id = "c";
  Instance zeroed = in;
  zeroed.characters["c"] = std::vector<float>(3, 0.0f);
  EXPECT_EQ(m.ScoreCandidates(Input(in, m)), m.ScoreCandidates(Input(zeroed, m)));
}

TEST(ScoreTest, SoftmaxShiftInvariance) {
  Rng rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> s(1 + rng.Uniform(12));
    for (double &x : s) x = 5 * rng.Normal();
    const double shift = 100 * rng.Normal();
    std::vector<double> t = s;
    for (double &x : t) x += shift;
    auto p = Softmax(s), q = Softmax(t);
    EXPECT_EQ(std::max_element(s.begin(), s.end()) - s.begin(),
              std::max_element(t.begin(), t.end()) - t.begin());
    for (size_t k = 0; k < p.size(); ++k) EXPECT_NEAR(p[k], q[k], 1e-9);
  }
}

TEST(AugmentDegeneracyTest, ZeroBlocksReproduceContextOnly) {
  ScorerModel ctx = RandomizedModel(SmallConfig(ScorerArity::kContextOnly, MentionMode::kFirstLast), 18);
  ScorerModel aug = ScorerModel::Augment(ctx, 3);
  EXPECT_EQ(aug.config().arity, ScorerArity::kAugmented);
  Rng rng(19);
  for (int trial = 0; trial < 20; ++trial) {
    Instance in = RandomInstance(rng, 4, 3);
    const auto expected = ctx.ScoreCandidates(Input(in, ctx));
    EXPECT_EQ(aug.ScoreCandidates(Input(in, aug)), expected);  // nonzero v, u
    for (auto &[id, v] : in.characters) std::fill(v.begin(), v.end(), 0.0f);
    std::fill(in.u.begin(), in.u.end(), 0.0f);
    EXPECT_EQ(aug.ScoreCandidates(Input(in, aug)), expected);
  }
  EXPECT_THROW(ScorerModel::Augment(aug, 3), Error);
}

TEST(LossTest, TiedScoresGiveLn2) {
  ScorerModel m = RandomizedModel(SmallConfig(ScorerArity::kContextOnly, MentionMode::kFirstLast), 20);
  std::fill(m.mutable_params().w2.begin(), m.mutable_params().w2.end(), 0.0);
  Rng rng(21);
  Instance in = RandomInstance(rng, 2, 3);
  EXPECT_NEAR(m.Loss(Input(in, m), {true, false}, nullptr), std::log(2.0), 1e-15);
  EXPECT_NEAR(m.Loss(Input(in, m), {true, true}, nullptr), 0.0, 1e-15);
  EXPECT_THROW(m.Loss(Input(in, m), {false, false}, nullptr), Error);
}

TEST(LossTest, GradientMatchesFiniteDifferences) {
  Rng rng(22);
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const ScorerArity arity = trial % 2 ? ScorerArity::kAugmented : ScorerArity::kContextOnly;
    const MentionMode mode = trial % 3 ? MentionMode::kFirstLast : MentionMode::kMean;
    ScorerModel m = RandomizedModel(SmallConfig(arity, mode), 100 + trial);
    Instance in = RandomInstance(rng, 3, 3);
    const double weight = 0.5 + rng.UniformReal();
    ScorerGradient g = m.ZeroGradient();
    m.Loss(Input(in, m), in.positives, &g, weight);
    const std::vector<double> analytic = Flatten(g, m);

    std::vector<double *> ptrs = ParamPointers(m.mutable_params());
    std::vector<double> x;
    for (double *p : ptrs) x.push_back(*p);
    auto f = [&](const std::vector<double> &values) {
      for (size_t i = 0; i < ptrs.size(); ++i) *ptrs[i] = values[i];
      return weight * m.Loss(Input(in, m), in.positives, nullptr);
    };
    const std::vector<double> numeric = testing::NumericGradient(x, f);

    EXPECT_LT(testing::RelativeError(analytic, numeric), 1e-4) << "trial " << trial;
    ++checked;
  }
  EXPECT_GE(checked, 50);
}

TEST(ScorerIoTest, RoundTripAndErrors) {
  ScorerModel m = RandomizedModel(SmallConfig(ScorerArity::kAugmented, MentionMode::kMean), 23);
  const std::string bytes = m.Serialize();
  EXPECT_EQ(bytes.substr(0, 6), "QASCR1");
  ScorerModel loaded = ScorerModel::Deserialize(bytes);
  EXPECT_EQ(loaded.config().arity, ScorerArity::kAugmented);
  EXPECT_EQ(loaded.config().mention_mode, MentionMode::kMean);
  EXPECT_EQ(loaded.config().InputDim(), m.config().InputDim());
  for (size_t i = 0; i < m.params().w1.size(); ++i) {
    EXPECT_EQ(loaded.params().w1[i], static_cast<double>(static_cast<float>(m.params().w1[i])));
  }
  EXPECT_EQ(loaded.Serialize(), bytes);

  const auto path = std::filesystem::temp_directory_path() / "qa_scorer_test.bin";
  loaded.Save(path);
  EXPECT_EQ(ScorerModel::Load(path).Serialize(), bytes);
  std::filesystem::remove(path);

  EXPECT_THROW(ScorerModel::Deserialize("QASCR0" + bytes.substr(6)), Error);
  EXPECT_THROW(ScorerModel::Deserialize(bytes.substr(0, bytes.size() - 3)), Error);
  EXPECT_THROW(ScorerModel::Deserialize(bytes + "x"), Error);
}

TEST(ScorerConfigTest, Defaults) {
  ScorerConfig c;
  EXPECT_EQ(c.hidden, 512u);
  EXPECT_EQ(c.char_dim, 512u);
  EXPECT_EQ(c.mention_mode, MentionMode::kFirstLast);
  EXPECT_EQ(ParseScorerArity("augmented"), ScorerArity::kAugmented);
  EXPECT_FALSE(ParseScorerArity("both"));
  EXPECT_EQ(ParseMentionMode(MentionModeName(MentionMode::kMean)), MentionMode::kMean);
}

}  // namespace
}  // namespace qa
