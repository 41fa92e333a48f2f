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

#include "qa/corpus/tokenizer.h"

#include <cstdint>

namespace qa {
namespace {

enum class CharClass { kSpace, kWord, kPunct };

// Length of the UTF-8 sequence starting with lead byte c; 1 for invalid.
size_t SequenceLength(unsigned char c) {
  if (c < 0x80) return 1;
  if ((c & 0xE0) == 0xC0) return 2;
  if ((c & 0xF0) == 0xE0) return 3;
  if ((c & 0xF8) == 0xF0) return 4;
  return 1;
}

uint32_t DecodeCodePoint(std::string_view text, size_t pos, size_t len) {
  auto b = [&](size_t i) { return static_cast<unsigned char>(text[pos + i]); };
  switch (len) {
    case 2: return ((b(0) & 0x1F) << 6) | (b(1) & 0x3F);
    case 3: return ((b(0) & 0x0F) << 12) | ((b(1) & 0x3F) << 6) | (b(2) & 0x3F);
    case 4:
      return ((b(0) & 0x07) << 18) | ((b(1) & 0x3F) << 12) |
             ((b(2) & 0x3F) << 6) | (b(3) & 0x3F);
    default: return b(0);
  }
}

CharClass Classify(uint32_t cp) {
  if (cp < 0x80) {
    if (cp == ' ' || cp == '\t' || cp == '\n' || cp == '\r' || cp == '\f' ||
        cp == '\v') {
      return CharClass::kSpace;
    }
    if ((cp >= '0' && cp <= '9') || (cp >= 'a' && cp <= 'z') ||
        (cp >= 'A' && cp <= 'Z') || cp == '_') {
      return CharClass::kWord;
    }
    return CharClass::kPunct;
  }
  if (cp == 0xA0 || cp == 0x2002 || cp == 0x2003 || cp == 0x2009) {
    return CharClass::kSpace;
  }
  // General punctuation block: dashes, curly quotes, ellipsis.
  if ((cp >= 0x2010 && cp <= 0x2027) || cp == 0xAB || cp == 0xBB) {
    return CharClass::kPunct;
  }
  return CharClass::kWord;
}

template <typename Emit>
void Scan(std::string_view text, Emit emit) {
  size_t pos = 0;
  size_t word_start = std::string_view::npos;
  while (pos < text.size()) {
    size_t len = SequenceLength(static_cast<unsigned char>(text[pos]));
    if (pos + len > text.size()) len = 1;
    CharClass cls = Classify(DecodeCodePoint(text, pos, len));
    if (cls == CharClass::kWord) {
      if (word_start == std::string_view::npos) word_start = pos;
    } else {
      if (word_start != std::string_view::npos) {
        emit(word_start, pos, true);
        word_start = std::string_view::npos;
      }
      if (cls == CharClass::kPunct) emit(pos, pos + len, false);
    }
    pos += len;
  }
  if (word_start != std::string_view::npos) emit(word_start, text.size(), true);
}

}  // namespace

std::vector<Token> Tokenize(std::string_view text) {
  std::vector<Token> tokens;
  Scan(text, [&](size_t b, size_t e, bool word) {
    tokens.push_back(Token{std::string(text.substr(b, e - b)), b, e, word});
  });
  return tokens;
}

size_t CountTokens(std::string_view text) {
  size_t n = 0;
  Scan(text, [&](size_t, size_t, bool) { ++n; });
  return n;
}

std::string AsciiLower(std::string_view text) {
  std::string out(text);
  for (char &c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

}  // namespace qa
