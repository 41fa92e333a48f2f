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

#include "qa/avdata/split.h"

#include <set>

#include <gtest/gtest.h>

#include "qa/util/errors.h"
#include "qa/util/random.h"

namespace qa {
namespace {

std::vector<std::string> Ids(size_t n) {
  std::vector<std::string> ids;
  for (size_t i = 0; i < n; ++i) ids.push_back("play" + std::to_string(i));
  return ids;
}

TEST(SplitTest, EightyTenTen) {
  CorpusSplits s = SplitCorpus(Ids(10), {0.8, 0.1, 0.1}, 7);
  EXPECT_EQ(s.train.size(), 8u);
  EXPECT_EQ(s.val.size(), 1u);
  EXPECT_EQ(s.test.size(), 1u);
}

TEST(SplitTest, RemainderGoesToTrain) {
  CorpusSplits s = SplitCorpus(Ids(19), {0.8, 0.1, 0.1}, 1);
  EXPECT_EQ(s.train.size(), 17u);
  EXPECT_EQ(s.val.size(), 1u);
  EXPECT_EQ(s.test.size(), 1u);
}

TEST(SplitTest, DeterministicAndOrderIndependent) {
  CorpusSplits a = SplitCorpus(Ids(30), {0.8, 0.1, 0.1}, 7);
  std::vector<std::string> reversed = Ids(30);
  std::reverse(reversed.begin(), reversed.end());
  CorpusSplits b = SplitCorpus(reversed, {0.8, 0.1, 0.1}, 7);
  EXPECT_EQ(a.train, b.train);
  EXPECT_EQ(a.val, b.val);
  EXPECT_EQ(a.test, b.test);
  CorpusSplits c = SplitCorpus(Ids(30), {0.8, 0.1, 0.1}, 8);
  EXPECT_NE(a.test, c.test);
}

TEST(SplitTest, SplitsAreDisjointAndCover) {
  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::string> ids;
    for (int i = 0; i < 100; ++i) ids.push_back("p" + std::to_string(rng.Next() % 100000));
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    CorpusSplits s = SplitCorpus(ids, {0.8, 0.1, 0.1}, trial);
    std::set<std::string> seen;
    for (const auto *part : {&s.train, &s.val, &s.test}) {
      for (const auto &id : *part) EXPECT_TRUE(seen.insert(id).second) << id;
    }
    EXPECT_EQ(seen.size(), ids.size());
  }
}

TEST(SplitTest, Errors) {
  EXPECT_THROW(SplitCorpus(Ids(2), {0.8, 0.1, 0.1}, 0), Error);
  EXPECT_THROW(SplitCorpus(Ids(10), {0.8, 0.1, 0.2}, 0), Error);
  EXPECT_THROW(SplitCorpus({"a", "a", "b"}, {0.8, 0.1, 0.1}, 0), Error);
  EXPECT_NO_THROW(SplitCorpus(Ids(1), {1.0, 0.0, 0.0}, 0));
}

}  // namespace
}  // namespace qa
