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

#include "qa/synth/novel_builder.h"

#include "qa/corpus/tokenizer.h"
#include "qa/util/errors.h"

namespace qa {

void NovelBuilder::AddCharacter(std::string id, std::string name,
                                std::vector<std::string> aliases) {
  novel_.characters.push_back(Character{std::move(id), std::move(name), std::move(aliases)});
}

size_t NovelBuilder::Append(std::string_view piece) {
  size_t first = tokens_;
  if (!text_.empty()) text_ += ' ';
  text_ += piece;
  tokens_ += CountTokens(piece);
  return first;
}

void NovelBuilder::Narration(std::string_view text) { Append(text); }

std::pair<size_t, size_t> NovelBuilder::Mention(std::string_view surface,
                                                std::optional<std::string> entity_id) {
  size_t n = CountTokens(surface);
  if (n == 0) throw Error("empty mention");
  size_t begin = Append(surface);
  qa::Mention m;
  m.begin = begin;
  m.end = begin + n - 1;
  m.entity_id = std::move(entity_id);
  novel_.mentions.push_back(m);
  return {m.begin, m.end};
}

std::string NovelBuilder::Quote(std::string_view content, std::optional<std::string> speaker_id,
                                QuoteType type) {
  std::string piece = "\" ";
  piece += content;
  piece += " \"";
  size_t n = CountTokens(piece);
  size_t begin = Append(piece);
  qa::Quote q;
  q.id = "q" + std::to_string(novel_.quotes.size());
  q.begin = begin;
  q.end = begin + n - 1;
  q.type = type;
  q.speaker_id = std::move(speaker_id);
  q.chapter = novel_.chapters.size();
  novel_.quotes.push_back(q);
  return q.id;
}

void NovelBuilder::EndChapter() {
  if (tokens_ == chapter_start_) throw Error("empty chapter");
  novel_.chapters.push_back(Chapter{chapter_start_, tokens_ - 1});
  chapter_start_ = tokens_;
}

std::string NovelBuilder::AnnotationJson() {
  if (tokens_ > chapter_start_) EndChapter();
  return NovelAnnotationJson(novel_);
}

AnnotatedNovel NovelBuilder::Build() {
  std::string json = AnnotationJson();
  return ParseNovel(id_, text_, json);
}

}  // namespace qa
