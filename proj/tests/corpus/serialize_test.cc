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

#include "qa/corpus/serialize.h"

#include <gtest/gtest.h>

#include "qa/corpus/drama_parser.h"
#include "qa/util/errors.h"

namespace qa {
namespace {

constexpr char kMarkup[] = R"(<play id="p1" title="T" author="A">
<act n="1"><scene n="1">
<sp who="Ann">Hello there.</sp>
<sp who="Bob">Good "day".</sp>
</scene></act>
<sp who="Ann">An epilogue.</sp>
</play>)";

TEST(SerializeTest, RoundTrip) {
  std::vector<Play> plays = {ParsePlay(kMarkup)};
  const std::string json = PlaysToJson(plays);
  std::vector<Play> back = PlaysFromJson(json);
  ASSERT_EQ(back.size(), 1u);
  const Play &p = back[0];
  EXPECT_EQ(p.id, "p1");
  EXPECT_EQ(p.author, "A");
  EXPECT_TRUE(p.scene_eligible);
  ASSERT_EQ(p.segments.size(), 1u);
  EXPECT_EQ(p.segments[0].id, plays[0].segments[0].id);
  EXPECT_EQ(p.segments[0].kind, SegmentKind::kScene);
  EXPECT_EQ(p.segments[0].characters, plays[0].segments[0].characters);
  ASSERT_EQ(p.utterances.size(), 3u);
  EXPECT_EQ(p.utterances[1].text, plays[0].utterances[1].text);
  EXPECT_EQ(p.utterances[2].line, plays[0].utterances[2].line);
  EXPECT_EQ(p.segments[0].utterances[1].ordinal, 1u);
  EXPECT_EQ(PlaysToJson(back), json);
}

TEST(SerializeTest, MalformedInput) {
  EXPECT_THROW(PlaysFromJson("[{\"id\": 1}]"), Error);
  EXPECT_THROW(PlaysFromJson("not json"), Error);
}

}  // namespace
}  // namespace qa
