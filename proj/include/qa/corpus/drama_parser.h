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

#ifndef QA_CORPUS_DRAMA_PARSER_H_
#define QA_CORPUS_DRAMA_PARSER_H_

#include <filesystem>
#include <string_view>

#include "qa/corpus/play.h"

namespace qa {

// Parses drama markup:
//
//   <play id="..." title="..." author="...">
//     <act n="1">
//       <scene n="1">
//         <sp who="HAMLET">utterance text</sp>
//       </scene>
//     </act>
//   </play>
//
// <act> and <scene> are optional. Text outside <sp> (stage directions) is
// discarded, as is the content of any element other than play, act, scene
// and sp. Whitespace inside an utterance is collapsed to single spaces and
// the five predefined XML entities plus numeric references are decoded.
//
// Throws ParseError (with the line number) on malformed or unclosed tags,
// on an <sp> without a who attribute, and on a nested <sp>. An <sp> whose
// who lists several comma-separated speakers is skipped and counted in
// Play::skipped_blocks.
Play ParsePlay(std::string_view markup);

Play LoadPlay(const std::filesystem::path &path);

}  // namespace qa

#endif  // QA_CORPUS_DRAMA_PARSER_H_
