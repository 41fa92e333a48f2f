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

#include "qa/attrib/context.h"

#include <string>

#include <gtest/gtest.h>

#include "qa/corpus/lexicon.h"
#include "qa/synth/novel_builder.h"
#include "qa/synth/novels.h"

namespace qa {
namespace {

std::string Words(size_t n) {
  std::string s;
  for (size_t i = 0; i < n; ++i) s += i ? " w" : "w";
  return s;
}

AnnotatedNovel FixtureNovel() {
  return LoadNovel(QA_TEST_DATA_DIR "/novels/fixture.txt", QA_TEST_DATA_DIR "/novels/fixture.json");
}

size_t Count(const ContextSegment &seg, ContextTokenKind kind) {
  size_t n = 0;
  for (const ContextToken &t : seg.tokens) n += t.kind == kind;
  return n;
}

TEST(BuildContextTest, WindowAroundQuote) {
  NovelBuilder b("n");
  b.Narration(Words(200));
  b.Quote(Words(49), std::nullopt, QuoteType::kImplicit);
  b.Narration(Words(749));
  AnnotatedNovel novel = b.Build();
  ASSERT_EQ(novel.tokens.size(), 1000u);
  ASSERT_EQ(novel.quotes[0].begin, 200u);
  ASSERT_EQ(novel.quotes[0].end, 250u);

  ContextSegment seg = BuildContext(novel, 0, 100);
  EXPECT_EQ(seg.window_begin, 100u);
  EXPECT_EQ(seg.window_end, 350u);
  ASSERT_EQ(seg.tokens.size(), 201u);
  EXPECT_EQ(seg.quote_pos, 100u);
  EXPECT_EQ(seg.tokens[100].kind, ContextTokenKind::kQuote);
  EXPECT_EQ(seg.tokens[100].text, "[QUOTE]");
  EXPECT_EQ(seg.tokens[100].doc_begin, 200u);
  EXPECT_EQ(seg.tokens[100].doc_end, 250u);
  EXPECT_EQ(seg.tokens.front().doc_begin, 100u);
  EXPECT_EQ(seg.tokens.back().doc_end, 350u);
  EXPECT_EQ(*seg.SegmentPosition(230), 100u);
  EXPECT_EQ(*seg.SegmentPosition(251), 101u);
  EXPECT_FALSE(seg.SegmentPosition(99));
  EXPECT_FALSE(seg.SegmentPosition(351));
}

TEST(BuildContextTest, ClipsAtDocumentStart) {
  NovelBuilder b("n");
  b.Quote(Words(4), std::nullopt, QuoteType::kImplicit);
  b.Narration(Words(10));
  AnnotatedNovel novel = b.Build();
  ASSERT_EQ(novel.quotes[0].end, 5u);
  ContextSegment seg = BuildContext(novel, 0, 100);
  EXPECT_EQ(seg.window_begin, 0u);
  EXPECT_EQ(seg.window_end, 15u);
  EXPECT_EQ(seg.quote_pos, 0u);
  EXPECT_EQ(seg.tokens.size(), 11u);
}

TEST(BuildContextTest, NeighborQuotesBecomeAltQuote) {
  NovelBuilder b("n");
  b.Quote(Words(6), std::nullopt, QuoteType::kImplicit);  // [0,7]
  b.Narration(Words(3));                                   // [8,10]
  b.Quote(Words(2), std::nullopt, QuoteType::kImplicit);  // [11,14]
  b.Quote(Words(3), std::nullopt, QuoteType::kImplicit);  // [15,19]
  b.Narration(Words(2));
  AnnotatedNovel novel = b.Build();
  // Window [6, 19] cuts into the first quote.
  ContextSegment seg = BuildContext(novel, 1, 5);
  EXPECT_EQ(seg.window_begin, 6u);
  EXPECT_EQ(seg.window_end, 19u);
  ASSERT_EQ(seg.tokens.size(), 6u);
  EXPECT_EQ(seg.tokens[0].kind, ContextTokenKind::kAltQuote);
  EXPECT_EQ(seg.tokens[0].text, "[ALTQUOTE]");
  EXPECT_EQ(seg.tokens[0].doc_begin, 6u);
  EXPECT_EQ(seg.tokens[0].doc_end, 7u);
  EXPECT_EQ(seg.quote_pos, 4u);
  EXPECT_EQ(seg.tokens[5].kind, ContextTokenKind::kAltQuote);
  EXPECT_EQ(seg.tokens[5].doc_begin, 15u);
  EXPECT_EQ(seg.tokens[5].doc_end, 19u);
}

TEST(EnumerateCandidatesTest, FixtureNovel) {
  AnnotatedNovel novel = FixtureNovel();
  CharacterLexicon lexicon(novel.characters);
  ContextSegment seg = BuildContext(novel, 1, 100);
  std::vector<CandidateMention> c = EnumerateCandidates(seg, novel, lexicon);
  // "he" (no link, no alias) and "Lizzy" (inside q3) are not candidates.
  ASSERT_EQ(c.size(), 4u);
  EXPECT_EQ(c[0].entity_id, "eliz");
  EXPECT_EQ(c[1].entity_id, "darcy");
  EXPECT_EQ(c[2].entity_id, "eliz");  // resolved through the lexicon
  EXPECT_EQ(c[3].entity_id, "darcy");
  // q1 [2,8] collapses to one [ALTQUOTE], shifting later positions by 6.
  EXPECT_EQ(c[1].begin, 6u);
  EXPECT_EQ(c[1].end, 8u);
  EXPECT_EQ(c[2].begin, *seg.SegmentPosition(33));
  EXPECT_EQ(seg.tokens[c[3].begin].text, "Darcy");
}

TEST(EnumerateCandidatesTest, NoTruncation) {
  NovelBuilder b("n");
  b.AddCharacter("a", "Anne");
  b.AddCharacter("b", "Bill");
  for (int i = 0; i < 7; ++i) {
    b.Mention("Anne", "a");
    b.Mention("Bill", std::nullopt);
  }
  b.Quote("hello", "a", QuoteType::kImplicit);
  AnnotatedNovel novel = b.Build();
  CharacterLexicon lexicon(novel.characters);
  std::vector<CandidateMention> c =
      EnumerateCandidates(BuildContext(novel, 0, 100), novel, lexicon);
  ASSERT_EQ(c.size(), 14u);
  for (size_t k = 1; k < c.size(); ++k) EXPECT_LT(c[k - 1].begin, c[k].begin);
}

TEST(EnumerateCandidatesTest, AmbiguousSurfaceDropped) {
  NovelBuilder b("n");
  b.AddCharacter("jane", "Jane", {"Bennet"});
  b.AddCharacter("lydia", "Lydia", {"Bennet"});
  b.Mention("Bennet", std::nullopt);
  b.Mention("Bennet", "lydia");  // an annotation link wins
  b.Mention("Jane", std::nullopt);
  b.Quote("hello", "jane", QuoteType::kImplicit);
  AnnotatedNovel novel = b.Build();
  CharacterLexicon lexicon(novel.characters);
  std::vector<CandidateMention> c =
      EnumerateCandidates(BuildContext(novel, 0, 100), novel, lexicon);
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c[0].entity_id, "lydia");
  EXPECT_EQ(c[1].entity_id, "jane");
}

TEST(EnumerateCandidatesTest, MentionsMustLieInsideWindow) {
  NovelBuilder b("n");
  b.AddCharacter("a", "Anne", {"Anne Smith"});
  b.Mention("Anne Smith", "a");  // [0,1]
  b.Narration("x");
  b.Quote("hi", "a", QuoteType::kImplicit);  // [3,5]
  AnnotatedNovel novel = b.Build();
  CharacterLexicon lexicon(novel.characters);
  EXPECT_TRUE(EnumerateCandidates(BuildContext(novel, 0, 2), novel, lexicon).empty());
  EXPECT_EQ(EnumerateCandidates(BuildContext(novel, 0, 3), novel, lexicon).size(), 1u);
}

TEST(IsUnanswerableTest, Basic) {
  std::vector<CandidateMention> c(2);
  c[0].entity_id = "A";
  c[1].entity_id = "B";
  EXPECT_FALSE(IsUnanswerable("A", c));
  c.erase(c.begin());
  EXPECT_TRUE(IsUnanswerable("A", c));
  EXPECT_TRUE(IsUnanswerable("A", {}));
}

TEST(IsUnanswerableTest, FixtureHandCount) {
  AnnotatedNovel novel = FixtureNovel();
  CharacterLexicon lexicon(novel.characters);
  // With w = 5 only q2 lacks a candidate for its speaker: its window
  // [17,32] holds just the unresolvable "he".
  std::vector<bool> expected = {false, true, false};
  for (size_t q = 0; q < novel.quotes.size(); ++q) {
    auto c = EnumerateCandidates(BuildContext(novel, q, 5), novel, lexicon);
    EXPECT_EQ(IsUnanswerable(*novel.quotes[q].speaker_id, c), expected[q]) << q;
  }
}

// Masking completeness and candidate soundness on random novels.
TEST(ContextPropertyTest, RandomNovels) {
  for (uint64_t seed = 0; seed < 500; ++seed) {
    SCOPED_TRACE(seed);
    AnnotatedNovel novel = RandomFixtureNovel(seed);
    CharacterLexicon lexicon(novel.characters);
    for (size_t q = 0; q < novel.quotes.size(); ++q) {
      const size_t w = 1 + (seed + q) % 12;
      ContextSegment seg = BuildContext(novel, q, w);
      ASSERT_EQ(Count(seg, ContextTokenKind::kQuote), 1u);
      ASSERT_EQ(seg.tokens[seg.quote_pos].kind, ContextTokenKind::kQuote);
      size_t expected_doc = seg.window_begin;
      for (const ContextToken &t : seg.tokens) {
        ASSERT_EQ(t.doc_begin, expected_doc);
        expected_doc = t.doc_end + 1;
        const bool masked =
            t.kind == ContextTokenKind::kQuote || t.kind == ContextTokenKind::kAltQuote;
        for (size_t d = t.doc_begin; d <= t.doc_end; ++d) {
          ASSERT_EQ(novel.QuoteAt(d).has_value(), masked);
        }
        if (masked) ASSERT_EQ(*novel.QuoteAt(t.doc_begin), *novel.QuoteAt(t.doc_end));
      }
      ASSERT_EQ(expected_doc, seg.window_end + 1);
      for (const CandidateMention &c : EnumerateCandidates(seg, novel, lexicon)) {
        const Mention &m = novel.mentions[c.mention_index];
        ASSERT_FALSE(m.quote_internal);
        ASSERT_GE(m.begin, seg.window_begin);
        ASSERT_LE(m.end, seg.window_end);
        ASSERT_LE(c.begin, c.end);
        ASSERT_LT(c.end, seg.tokens.size());
        ASSERT_EQ(seg.tokens[c.begin].doc_begin, m.begin);
        ASSERT_EQ(seg.tokens[c.end].doc_end, m.end);
        ASSERT_NE(novel.FindCharacter(c.entity_id), nullptr);
        if (m.entity_id) ASSERT_EQ(*m.entity_id, c.entity_id);
      }
    }
  }
}

}  // namespace
}  // namespace qa
