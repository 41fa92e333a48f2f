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

#ifndef QA_CORPUS_LEXICON_H_
#define QA_CORPUS_LEXICON_H_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "qa/corpus/play.h"

namespace qa {

// Maps alias surface strings to character ids. Matching is exact after
// ASCII case folding and whitespace collapsing; no fuzzy matching.
class CharacterLexicon {
 public:
  CharacterLexicon() = default;
  explicit CharacterLexicon(const std::vector<Character> &characters);

  // The unique character whose aliases contain surface, or nullopt when no
  // character or more than one character matches.
  std::optional<std::string> Resolve(std::string_view surface) const;

  bool Contains(std::string_view id) const { return ids_.count(std::string(id)) > 0; }

  static std::string Normalize(std::string_view surface);

 private:
  std::map<std::string, std::set<std::string>> aliases_;
  std::set<std::string> ids_;
};

}  // namespace qa

#endif  // QA_CORPUS_LEXICON_H_
