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

#include "qa/corpus/lexicon.h"

#include "qa/corpus/tokenizer.h"

namespace qa {

CharacterLexicon::CharacterLexicon(const std::vector<Character> &characters) {
  for (const Character &c : characters) {
    ids_.insert(c.id);
    aliases_[Normalize(c.name)].insert(c.id);
    for (const std::string &alias : c.aliases) aliases_[Normalize(alias)].insert(c.id);
  }
}

std::string CharacterLexicon::Normalize(std::string_view surface) {
  std::string out;
  bool pending = false;
  for (char c : AsciiLower(surface)) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      pending = !out.empty();
    } else {
      if (pending) out.push_back(' ');
      pending = false;
      out.push_back(c);
    }
  }
  return out;
}

std::optional<std::string> CharacterLexicon::Resolve(std::string_view surface) const {
  auto it = aliases_.find(Normalize(surface));
  if (it == aliases_.end() || it->second.size() != 1) return std::nullopt;
  return *it->second.begin();
}

}  // namespace qa
