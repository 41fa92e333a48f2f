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

#include "qa/avdata/queryset.h"

#include <set>

#include <gtest/gtest.h>

#include "../test_util.h"
#include "qa/util/random.h"

namespace qa {
namespace {

using testing::TurnTakingSegment;

std::set<size_t> AsSet(const std::vector<size_t> &v) { return {v.begin(), v.end()}; }

TEST(EvalQuerySetTest, HalvesUtterances) {
  Segment seg = TurnTakingSegment("p/scene-1", {{"A", 10}, {"B", 11}, {"C", 1}});
  auto qs = BuildEvalQuerySet(seg, "p", 5);
  ASSERT_TRUE(qs);
  ASSERT_EQ(qs->queries.size(), 2u);
  ASSERT_EQ(qs->targets.size(), 3u);
  EXPECT_EQ(qs->queries[0].texts.size(), 5u);
  EXPECT_EQ(qs->targets[0].texts.size(), 5u);
  EXPECT_EQ(qs->queries[1].texts.size(), 5u);
  EXPECT_EQ(qs->targets[1].texts.size(), 6u);
  EXPECT_EQ(qs->targets[2].character_id, "C");
  EXPECT_EQ(qs->targets[2].texts.size(), 1u);
  EXPECT_EQ(qs->queries[0].key, "p/scene-1|A|query");
}

TEST(EvalQuerySetTest, SingleCharacterSegmentSkipped) {
  EXPECT_FALSE(BuildEvalQuerySet(TurnTakingSegment("s", {{"A", 9}}), "p", 1));
  EXPECT_FALSE(BuildEvalQuerySet(TurnTakingSegment("s", {{"A", 9}, {"B", 1}}), "p", 1));
}

TEST(EvalQuerySetTest, DeterministicPerSeed) {
  Segment seg = TurnTakingSegment("s", {{"A", 20}, {"B", 20}});
  auto a = BuildEvalQuerySet(seg, "p", 5);
  auto b = BuildEvalQuerySet(seg, "p", 5);
  EXPECT_EQ(a->queries[0].ordinals, b->queries[0].ordinals);
  auto c = BuildEvalQuerySet(seg, "p", 6);
  EXPECT_NE(a->queries[0].ordinals, c->queries[0].ordinals);
}

// Property: over random segments, every query is disjoint from its
// character's target, together they cover the character's lines, and
// there is one target per speaking character.
TEST(EvalQuerySetTest, DisjointnessAndCoverageProperty) {
  Rng rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<std::pair<std::string, size_t>> counts;
    size_t chars = 1 + rng.Uniform(6);
    for (size_t c = 0; c < chars; ++c) counts.emplace_back("C" + std::to_string(c), 1 + rng.Uniform(12));
    Segment seg = TurnTakingSegment("s" + std::to_string(trial), counts);
    auto qs = BuildEvalQuerySet(seg, "p", trial);
    size_t eligible = 0;
    for (auto &c : counts) eligible += c.second >= 2;
    ASSERT_EQ(qs.has_value(), eligible >= 2);
    if (!qs) continue;
    EXPECT_EQ(qs->targets.size(), chars);
    for (const auto &q : qs->queries) {
      const UtteranceCollection *t = nullptr;
      for (const auto &cand : qs->targets) {
        if (cand.character_id == q.character_id) t = &cand;
      }
      ASSERT_NE(t, nullptr);
      std::set<size_t> qset = AsSet(q.ordinals), tset = AsSet(t->ordinals);
      for (size_t o : qset) EXPECT_FALSE(tset.count(o));
      EXPECT_EQ(qset.size() + tset.size(), seg.UtterancesOf(q.character_id).size());
      EXPECT_EQ(qset.size(), (qset.size() + tset.size()) / 2);
      for (size_t o : q.ordinals) EXPECT_EQ(seg.utterances[o].speaker_id, q.character_id);
    }
  }
}

TEST(TrainInstanceTest, SixteenLinesGiveOneDisjointPair) {
  Segment seg = TurnTakingSegment("s", {{"A", 16}, {"B", 15}});
  auto inst = BuildTrainInstances(seg, 3, 0);
  ASSERT_EQ(inst.size(), 1u);
  EXPECT_EQ(inst[0].character_id, "A");
  EXPECT_EQ(inst[0].query.ordinals.size(), 8u);
  EXPECT_EQ(inst[0].target.ordinals.size(), 8u);
  std::set<size_t> all = AsSet(inst[0].query.ordinals);
  for (size_t o : inst[0].target.ordinals) EXPECT_TRUE(all.insert(o).second);
}

TEST(TrainInstanceTest, NoEligibleCharacterGivesEmptyList) {
  EXPECT_TRUE(BuildTrainInstances(TurnTakingSegment("s", {{"A", 15}}), 3, 0).empty());
}

TEST(TrainInstanceTest, ResampledPerEpoch) {
  Segment seg = TurnTakingSegment("s", {{"A", 40}, {"B", 40}});
  auto e0 = BuildTrainInstances(seg, 3, 0);
  auto e0b = BuildTrainInstances(seg, 3, 0);
  auto e1 = BuildTrainInstances(seg, 3, 1);
  EXPECT_EQ(e0[0].query.ordinals, e0b[0].query.ordinals);
  EXPECT_EQ(e0[1].target.ordinals, e0b[1].target.ordinals);
  EXPECT_NE(e0[0].query.ordinals, e1[0].query.ordinals);
}

TEST(TrainInstanceTest, DisjointnessProperty) {
  Rng rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    Segment seg = TurnTakingSegment("t" + std::to_string(trial),
                                    {{"A", 10 + rng.Uniform(30)}, {"B", 10 + rng.Uniform(30)}});
    for (const auto &inst : BuildTrainInstances(seg, trial, static_cast<int>(rng.Uniform(20)))) {
      std::set<size_t> q = AsSet(inst.query.ordinals);
      for (size_t o : inst.target.ordinals) EXPECT_FALSE(q.count(o));
      EXPECT_EQ(q.size(), 8u);
    }
  }
}

TEST(AuditTest, OneRecordPerCollection) {
  Segment seg = TurnTakingSegment("s", {{"A", 4}, {"B", 3}});
  auto qs = BuildEvalQuerySet(seg, "p", 1);
  std::string audit = AuditRecords("test", *qs);
  EXPECT_EQ(std::count(audit.begin(), audit.end(), '\n'), 4);
  EXPECT_NE(audit.find("\"origin\":\"query\""), std::string::npos);
  EXPECT_NE(audit.find("\"split\":\"test\""), std::string::npos);
}

TEST(SummaryTest, CountsQueriesAndTargets) {
  Segment seg = TurnTakingSegment("s", {{"A", 4}, {"B", 3}, {"C", 1}});
  SegmentSummary s = Summarize(*BuildEvalQuerySet(seg, "p", 1));
  EXPECT_EQ(s.utterances, 8u);
  EXPECT_EQ(s.queries, 2u);
  EXPECT_EQ(s.targets, 3u);
}

}  // namespace
}  // namespace qa
