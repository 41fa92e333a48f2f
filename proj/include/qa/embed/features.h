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

#ifndef QA_EMBED_FEATURES_H_
#define QA_EMBED_FEATURES_H_

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qa {

struct FeatureConfig {
  std::vector<int> ngram_orders = {1, 2, 3};
  uint32_t hash_dim = 1u << 18;
  std::string function_words = "english";
  // Upper bounds of the utterance-length buckets, in tokens. Longer
  // utterances fall into a final open bucket.
  std::vector<size_t> length_buckets = {4, 8, 16, 32};
  size_t max_tokens = 64;

  // Throws ValidationError when hash_dim is 0, the order list is empty or
  // holds a non-positive order, or the function-word list is unknown.
  void Validate() const;

  bool operator==(const FeatureConfig &) const = default;
};

// Sparse vector as (index, value) pairs sorted by index, without zeros.
using SparseVector = std::vector<std::pair<uint32_t, double>>;

// Lower-cased function-word list registered under id, or nullptr.
const std::vector<std::string> *FunctionWordList(std::string_view id);

// Named feature counts of one utterance, before hashing:
//   c<n>:<gram>   character n-gram of a lower-cased word token
//   fw:<word>     function word
//   p:<char>      punctuation token
//   len:<bucket>  utterance length bucket ("len:<=8", "len:>32")
// Only the first max_tokens tokens are read. Empty text has no features.
std::map<std::string, double> ExtractFeatureTerms(std::string_view utterance,
                                                  const FeatureConfig &config);

// Feature terms hashed into hash_dim signed buckets.
SparseVector ExtractFeatures(std::string_view utterance, const FeatureConfig &config);

// Bucket and sign of one feature term.
std::pair<uint32_t, double> HashFeature(std::string_view term, uint32_t hash_dim);

// Adds b into a.
void AddInto(SparseVector &a, const SparseVector &b);
double Norm(const SparseVector &v);

}  // namespace qa

#endif  // QA_EMBED_FEATURES_H_
