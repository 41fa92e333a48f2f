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

#ifndef QA_CORPUS_NOVEL_H_
#define QA_CORPUS_NOVEL_H_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qa/corpus/play.h"
#include "qa/corpus/tokenizer.h"

namespace qa {

enum class QuoteType { kExplicit, kAnaphoric, kImplicit };

std::string_view QuoteTypeName(QuoteType type);
std::optional<QuoteType> ParseQuoteType(std::string_view name);

// Token ranges in a novel are inclusive on both ends.
struct Quote {
  std::string id;
  size_t begin = 0;
  size_t end = 0;
  QuoteType type = QuoteType::kImplicit;
  std::optional<std::string> speaker_id;
  size_t chapter = 0;
};

struct Mention {
  size_t begin = 0;
  size_t end = 0;
  std::optional<std::string> entity_id;
  // Set when the mention overlaps a quote; such mentions are never
  // attribution candidates.
  bool quote_internal = false;
};

struct Chapter {
  size_t begin = 0;
  size_t end = 0;
};

struct AnnotatedNovel {
  std::string id;
  std::string text;
  std::vector<Token> tokens;
  std::vector<Character> characters;
  std::vector<Quote> quotes;  // ordered by begin
  std::vector<Mention> mentions;  // ordered by (begin, end)
  std::vector<Chapter> chapters;

  // Source text covered by tokens [begin, end].
  std::string_view Span(size_t begin, size_t end) const;
  std::string_view QuoteText(const Quote &quote) const {
    return Span(quote.begin, quote.end);
  }
  const Character *FindCharacter(std::string_view id) const;
  // Index of the quote containing token, if any.
  std::optional<size_t> QuoteAt(size_t token) const;
  // Number of quotes attributed to each character id.
  size_t QuoteCount(std::string_view speaker_id) const;
};

// Builds a novel from raw text and a JSON annotation document:
//
//   {"characters": [{"id": "...", "name": "...", "aliases": ["..."]}],
//    "chapters":   [{"start_tok": 0, "end_tok": 99}],
//    "quotes":     [{"id": "...", "start_tok": 3, "end_tok": 9,
//                    "type": "explicit", "speaker_id": "...", "chapter": 0}],
//    "mentions":   [{"start_tok": 11, "end_tok": 11, "entity_id": "..."}]}
//
// Token indices refer to Tokenize(text). speaker_id and entity_id are
// optional (absent or null). Throws ValidationError naming the offending
// record when ids dangle, indices fall outside the document, quotes
// overlap, or chapters do not partition the token range.
AnnotatedNovel ParseNovel(std::string id, std::string text,
                          std::string_view annotation_json);

// Loads <stem>.txt and <stem>.json; the novel id is the stem.
AnnotatedNovel LoadNovel(const std::filesystem::path &text_path,
                         const std::filesystem::path &annotation_path);

// Serializes the annotation of a novel back to the JSON document above.
std::string NovelAnnotationJson(const AnnotatedNovel &novel);

// Re-checks every invariant; throws ValidationError on the first failure.
void ValidateNovel(AnnotatedNovel &novel);

}  // namespace qa

#endif  // QA_CORPUS_NOVEL_H_
