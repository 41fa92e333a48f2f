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

#ifndef QA_ATTRIB_CONTEXT_H_
#define QA_ATTRIB_CONTEXT_H_

#include <optional>
#include <string>
#include <vector>

#include "qa/corpus/lexicon.h"
#include "qa/corpus/novel.h"

namespace qa {

enum class ContextTokenKind { kWord, kPunct, kQuote, kAltQuote };

struct ContextToken {
  std::string text;  // "[QUOTE]" / "[ALTQUOTE]" for masked quotes
  ContextTokenKind kind = ContextTokenKind::kWord;
  size_t doc_begin = 0;  // document token range covered, inclusive
  size_t doc_end = 0;
};

// The narrative around one quote: document tokens [window_begin,
// window_end] with the focal quote collapsed to a single [QUOTE] token and
// every other quote overlapping the window collapsed to [ALTQUOTE].
struct ContextSegment {
  size_t quote_index = 0;
  size_t window_begin = 0;
  size_t window_end = 0;
  size_t quote_pos = 0;  // segment position of [QUOTE]
  std::vector<ContextToken> tokens;

  // Segment position holding document token doc, if it is in the window.
  std::optional<size_t> SegmentPosition(size_t doc) const;
};

// Window of w tokens on each side of the quote, clipped to the document.
ContextSegment BuildContext(const AnnotatedNovel &novel, size_t quote_index, size_t w);

struct CandidateMention {
  size_t mention_index = 0;
  std::string entity_id;
  size_t begin = 0;  // segment positions, inclusive
  size_t end = 0;
};

// Every annotated mention lying entirely inside the window and outside all
// quotes whose entity is known: the annotated entity when present, else
// the lexicon's resolution of the surface text. Unresolvable mentions are
// dropped; the list is never truncated. Ordered by position.
std::vector<CandidateMention> EnumerateCandidates(const ContextSegment &segment,
                                                  const AnnotatedNovel &novel,
                                                  const CharacterLexicon &lexicon);

// True when no candidate refers to the gold speaker.
bool IsUnanswerable(const std::string &gold_speaker,
                    const std::vector<CandidateMention> &candidates);

}  // namespace qa

#endif  // QA_ATTRIB_CONTEXT_H_
