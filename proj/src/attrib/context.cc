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

#include <algorithm>

#include "qa/util/errors.h"

namespace qa {

std::optional<size_t> ContextSegment::SegmentPosition(size_t doc) const {
  if (doc < window_begin || doc > window_end) return std::nullopt;
  auto it = std::upper_bound(tokens.begin(), tokens.end(), doc,
                             [](size_t d, const ContextToken &t) { return d < t.doc_begin; });
  if (it == tokens.begin()) return std::nullopt;
  --it;
  if (doc > it->doc_end) return std::nullopt;
  return static_cast<size_t>(it - tokens.begin());
}

ContextSegment BuildContext(const AnnotatedNovel &novel, size_t quote_index, size_t w) {
  if (quote_index >= novel.quotes.size()) throw Error("quote index out of range");
  const Quote &focal = novel.quotes[quote_index];
  const size_t n = novel.tokens.size();
  ContextSegment seg;
  seg.quote_index = quote_index;
  seg.window_begin = focal.begin > w ? focal.begin - w : 0;
  seg.window_end = std::min(n - 1, focal.end + w);

  size_t doc = seg.window_begin;
  while (doc <= seg.window_end) {
    std::optional<size_t> q = novel.QuoteAt(doc);
    if (q) {
      const Quote &quote = novel.quotes[*q];
      ContextToken t;
      t.kind = *q == quote_index ? ContextTokenKind::kQuote : ContextTokenKind::kAltQuote;
      t.text = *q == quote_index ? "[QUOTE]" : "[ALTQUOTE]";
      t.doc_begin = doc;
      t.doc_end = std::min(quote.end, seg.window_end);
      if (*q == quote_index) seg.quote_pos = seg.tokens.size();
      seg.tokens.push_back(std::move(t));
      doc = quote.end + 1;
      continue;
    }
    const Token &tok = novel.tokens[doc];
    seg.tokens.push_back(ContextToken{
        tok.text, tok.is_word ? ContextTokenKind::kWord : ContextTokenKind::kPunct, doc, doc});
    ++doc;
  }
  return seg;
}

std::vector<CandidateMention> EnumerateCandidates(const ContextSegment &segment,
                                                  const AnnotatedNovel &novel,
                                                  const CharacterLexicon &lexicon) {
  std::vector<CandidateMention> out;
  for (size_t k = 0; k < novel.mentions.size(); ++k) {
    const Mention &m = novel.mentions[k];
    if (m.quote_internal) continue;
    if (m.begin < segment.window_begin || m.end > segment.window_end) continue;
    std::optional<std::string> entity = m.entity_id;
    if (!entity) entity = lexicon.Resolve(novel.Span(m.begin, m.end));
    if (!entity) continue;
    CandidateMention c;
    c.mention_index = k;
    c.entity_id = *entity;
    c.begin = *segment.SegmentPosition(m.begin);
    c.end = *segment.SegmentPosition(m.end);
    out.push_back(std::move(c));
  }
  std::stable_sort(out.begin(), out.end(), [](const CandidateMention &a, const CandidateMention &b) {
    return a.begin != b.begin ? a.begin < b.begin : a.end < b.end;
  });
  return out;
}

bool IsUnanswerable(const std::string &gold_speaker,
                    const std::vector<CandidateMention> &candidates) {
  for (const CandidateMention &c : candidates) {
    if (c.entity_id == gold_speaker) return false;
  }
  return true;
}

}  // namespace qa
