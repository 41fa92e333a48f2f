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

#ifndef QA_CORPUS_TOKENIZER_H_
#define QA_CORPUS_TOKENIZER_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace qa {

// A token with byte offsets [begin, end) into the source text.
struct Token {
  std::string text;
  size_t begin = 0;
  size_t end = 0;
  bool is_word = false;

  bool operator==(const Token &) const = default;
};

// Splits text on whitespace and separates every punctuation character into
// its own token. Apostrophes are punctuation, so "don't" becomes
// ["don", "'", "t"]. Non-ASCII code points are word characters except for
// the typographic quotes, dashes and ellipsis, which are punctuation.
// Tokens never overlap and are ordered by offset; whitespace is the only
// text not covered by a token.
std::vector<Token> Tokenize(std::string_view text);

// Number of tokens Tokenize(text) would produce.
size_t CountTokens(std::string_view text);

// ASCII lower-casing. Bytes >= 0x80 are left alone.
std::string AsciiLower(std::string_view text);

}  // namespace qa

#endif  // QA_CORPUS_TOKENIZER_H_
