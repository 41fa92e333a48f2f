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

#ifndef QA_SYNTH_NOVEL_BUILDER_H_
#define QA_SYNTH_NOVEL_BUILDER_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qa/corpus/novel.h"

namespace qa {

// Assembles a novel text piece by piece while recording token offsets, so
// that annotations line up with Tokenize(text) by construction. Pieces are
// joined with single spaces.
class NovelBuilder {
 public:
  explicit NovelBuilder(std::string id) : id_(std::move(id)) {}

  void AddCharacter(std::string id, std::string name, std::vector<std::string> aliases = {});

  void Narration(std::string_view text);
  // Appends surface as narration and annotates it as a mention. Returns
  // the mention's token range.
  std::pair<size_t, size_t> Mention(std::string_view surface,
                                    std::optional<std::string> entity_id);
  // Appends `" content "` and annotates the quote, marks included. Returns
  // the quote id ("q<k>").
  std::string Quote(std::string_view content, std::optional<std::string> speaker_id,
                    QuoteType type);
  // Ends the current chapter; later text starts a new one.
  void EndChapter();

  size_t tokens() const { return tokens_; }
  const std::string &text() const { return text_; }
  // Ends the open chapter if it has text and builds the annotated novel.
  AnnotatedNovel Build();
  std::string AnnotationJson();

 private:
  size_t Append(std::string_view piece);  // returns first token index

  std::string id_;
  std::string text_;
  size_t tokens_ = 0;
  size_t chapter_start_ = 0;
  AnnotatedNovel novel_;
};

}  // namespace qa

#endif  // QA_SYNTH_NOVEL_BUILDER_H_
