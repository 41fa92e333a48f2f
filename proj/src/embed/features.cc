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

#include "qa/embed/features.h"

#include <algorithm>
#include <cmath>

#include "qa/corpus/tokenizer.h"
#include "qa/util/errors.h"
#include "qa/util/random.h"

namespace qa {
namespace {

// Closed-class English words plus the archaic forms common in drama.
const std::vector<std::string> &English() {
  static const std::vector<std::string> words = [] {
    std::vector<std::string> w = {
      "a",     "about",  "after",  "again", "ah",     "all",    "alas",   "also",
      "am",    "an",     "and",    "any",   "are",    "art",    "as",     "at",
      "aye",   "be",     "because", "been", "before", "being",  "both",   "but",
      "by",    "can",    "could",  "did",   "do",     "does",   "dost",   "doth",
      "down",  "each",   "either", "else",  "ere",    "even",   "ever",   "for",
      "from",  "had",    "has",    "hast",  "hath",   "have",   "he",     "her",
      "here",  "hers",   "him",    "his",   "how",    "i",      "if",     "in",
      "indeed", "into",  "is",     "it",    "its",    "just",   "may",    "me",
      "might", "mine",   "more",   "most",  "much",   "must",   "my",     "nay",
      "neither", "never", "no",    "nor",   "not",    "now",    "o",      "of",
      "off",   "oh",     "on",     "once",  "only",   "or",     "other",  "our",
      "out",   "over",   "perhaps", "quite", "rather", "shall", "shalt",  "she",
      "should", "since", "so",     "some",  "still",  "such",   "than",   "that",
      "the",   "thee",   "their",  "them",  "then",   "there",  "these",  "they",
      "thine", "this",   "those",  "thou",  "though", "thus",   "thy",    "to",
      "too",   "under",  "until",  "up",    "upon",   "us",     "very",   "was",
      "we",    "well",   "were",   "what",  "when",   "where",  "whether", "which",
      "while", "who",    "whom",   "why",   "will",   "wilt",   "with",   "would",
      "ye",    "yea",    "yes",    "yet",   "you",    "your",
    };
    std::sort(w.begin(), w.end());
    return w;
  }();
  return words;
}

// Byte offsets of code point starts in s, plus s.size().
std::vector<size_t> CodePointStarts(std::string_view s) {
  std::vector<size_t> starts;
  for (size_t i = 0; i < s.size(); ++i) {
    if ((static_cast<unsigned char>(s[i]) & 0xC0) != 0x80) starts.push_back(i);
  }
  starts.push_back(s.size());
  return starts;
}

std::string LengthBucket(size_t tokens, const std::vector<size_t> &buckets) {
  for (size_t bound : buckets) {
    if (tokens <= bound) return "len:<=" + std::to_string(bound);
  }
  return "len:>" + (buckets.empty() ? std::string("0") : std::to_string(buckets.back()));
}

}  // namespace

void FeatureConfig::Validate() const {
  if (hash_dim == 0) throw ValidationError("feature hash dimension must be positive");
  if (ngram_orders.empty()) throw ValidationError("ngram orders must not be empty");
  for (int n : ngram_orders) {
    if (n <= 0) throw ValidationError("ngram orders must be positive");
  }
  if (!FunctionWordList(function_words)) {
    throw ValidationError("unknown function-word list '" + function_words + "'");
  }
  if (!std::is_sorted(length_buckets.begin(), length_buckets.end())) {
    throw ValidationError("length buckets must be ascending");
  }
}

const std::vector<std::string> *FunctionWordList(std::string_view id) {
  if (id == "english") return &English();
  return nullptr;
}

std::map<std::string, double> ExtractFeatureTerms(std::string_view utterance,
                                                  const FeatureConfig &config) {
  std::map<std::string, double> terms;
  std::vector<Token> tokens = Tokenize(utterance);
  if (tokens.empty()) return terms;
  if (tokens.size() > config.max_tokens) tokens.resize(config.max_tokens);

  const std::vector<std::string> *words = FunctionWordList(config.function_words);
  for (const Token &token : tokens) {
    if (!token.is_word) {
      terms["p:" + token.text] += 1;
      continue;
    }
    std::string word = AsciiLower(token.text);
    if (words && std::binary_search(words->begin(), words->end(), word)) {
      terms["fw:" + word] += 1;
    }
    std::vector<size_t> starts = CodePointStarts(word);
    const size_t chars = starts.size() - 1;
    for (int n : config.ngram_orders) {
      const std::string prefix = "c" + std::to_string(n) + ":";
      for (size_t i = 0; i + n <= chars; ++i) {
        terms[prefix + word.substr(starts[i], starts[i + n] - starts[i])] += 1;
      }
    }
  }
  terms[LengthBucket(tokens.size(), config.length_buckets)] += 1;
  return terms;
}

std::pair<uint32_t, double> HashFeature(std::string_view term, uint32_t hash_dim) {
  uint64_t h = Fingerprint(term);
  double sign = (Mix64(h) >> 63) ? -1.0 : 1.0;
  return {static_cast<uint32_t>(h % hash_dim), sign};
}

SparseVector ExtractFeatures(std::string_view utterance, const FeatureConfig &config) {
  std::map<uint32_t, double> buckets;
  for (const auto &[term, count] : ExtractFeatureTerms(utterance, config)) {
    auto [index, sign] = HashFeature(term, config.hash_dim);
    buckets[index] += sign * count;
  }
  SparseVector v;
  for (const auto &[index, value] : buckets) {
    if (value != 0) v.emplace_back(index, value);
  }
  return v;
}

void AddInto(SparseVector &a, const SparseVector &b) {
  SparseVector out;
  out.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.push_back(b[j++]);
    } else {
      double v = a[i].second + b[j].second;
      if (v != 0) out.emplace_back(a[i].first, v);
      ++i;
      ++j;
    }
  }
  a = std::move(out);
}

double Norm(const SparseVector &v) {
  double s = 0;
  for (const auto &e : v) s += e.second * e.second;
  return std::sqrt(s);
}

}  // namespace qa
