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

#ifndef QA_SYNTH_NOVELS_H_
#define QA_SYNTH_NOVELS_H_

#include <cstdint>
#include <string>
#include <vector>

#include "qa/corpus/novel.h"

namespace qa {

struct SyntheticNovelConfig {
  size_t novels = 12;
  size_t characters = 6;
  size_t chapters = 4;
  size_t blocks_per_chapter = 6;  // conversations between two characters
  size_t min_block_quotes = 4;
  size_t max_block_quotes = 8;
  size_t min_words = 12;  // per quote
  size_t max_words = 20;
  double explicit_rate = 0.4;
  double anaphoric_rate = 0.2;  // the rest is implicit
  // Style parameters; pool, markers and vocabulary line up with
  // SyntheticPlayConfig when generated from the same seed.
  size_t style_pool = 8;
  size_t markers_per_style = 18;
  double marker_rate = 0.25;
  double punctuation_rate = 0.3;
  size_t vocabulary = 4000;
  size_t topic_words = 8;
  double topic_rate = 0.8;
};

struct NovelFiles {
  std::string id;
  std::string text;
  std::string annotation_json;
};

// Novels of two-person conversations. An explicit quote follows
// "<Name> said ,", an anaphoric one "they said ," (pronoun left
// unresolved), an implicit one has no cue. Every non-explicit quote is
// preceded by a sentence naming both participants in random order, so its
// context does not identify the speaker; speakers are drawn independently
// per quote and each character of a novel has its own style. Ids are
// "N00", "N01", ...; character ids "<novel>_C<k>". Deterministic in seed.
std::vector<NovelFiles> GenerateSyntheticNovelFiles(const SyntheticNovelConfig &config,
                                                    uint64_t seed);
std::vector<AnnotatedNovel> GenerateSyntheticNovels(const SyntheticNovelConfig &config,
                                                    uint64_t seed);

// Small adversarial novel for property tests: 2-5 characters, some sharing
// an ambiguous alias; mentions with and without entity links, unknown
// surfaces, mentions inside or straddling quotes, adjacent quotes and
// quotes at the document edges. Deterministic in seed.
AnnotatedNovel RandomFixtureNovel(uint64_t seed);

}  // namespace qa

#endif  // QA_SYNTH_NOVELS_H_
