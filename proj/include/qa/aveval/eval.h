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

#ifndef QA_AVEVAL_EVAL_H_
#define QA_AVEVAL_EVAL_H_

#include <atomic>
#include <map>
#include <string>
#include <vector>

#include "qa/avdata/queryset.h"
#include "qa/corpus/novel.h"
#include "qa/corpus/play.h"
#include "qa/embed/model.h"
#include "qa/embed/vectors.h"

namespace qa {

// Maps an utterance collection to a vector. Implementations must be safe
// to call concurrently.
class CollectionEncoder {
 public:
  virtual ~CollectionEncoder() = default;
  virtual std::vector<float> Encode(const UtteranceCollection &collection) const = 0;
};

class ModelEncoder : public CollectionEncoder {
 public:
  explicit ModelEncoder(const EmbeddingModel *model) : model_(model) {}
  std::vector<float> Encode(const UtteranceCollection &collection) const override;

 private:
  const EmbeddingModel *model_;
};

// Looks collections up by key in externally computed vectors. Missing keys
// encode to the zero vector.
class VectorTableEncoder : public CollectionEncoder {
 public:
  explicit VectorTableEncoder(const VectorTable *table);
  std::vector<float> Encode(const UtteranceCollection &collection) const override;
  size_t misses() const { return misses_; }

 private:
  const VectorTable *table_;
  size_t dim_ = 0;
  mutable std::atomic<size_t> misses_{0};
};

// Mean over queries of the AUC of the query's cosine to its own
// character's target against the cosines to every other target.
double EvalSegment(const CollectionEncoder &encoder, const QuerySet &queryset);

struct PlayAuc {
  std::string play_id;
  std::string title;
  std::string author;
  size_t segments = 0;
  double auc = 0;  // mean over the play's segments
};

struct AucReport {
  std::string protocol;  // scene, play, CC or CQ
  std::vector<PlayAuc> plays;  // in play id order
  double mean = 0;  // mean of per-play AUCs
  double std = 0;   // population standard deviation across plays
  double segment_mean = 0;  // mean over all segments, regardless of play
  size_t segments = 0;
};

struct PlayInfo {
  std::string title;
  std::string author;
};

// Evaluates every query set and aggregates per play. play_info supplies
// titles and authors for the per-play table; unknown plays get blanks.
AucReport EvalCorpus(const CollectionEncoder &encoder, const std::vector<QuerySet> &querysets,
                     const std::string &protocol,
                     const std::map<std::string, PlayInfo> &play_info = {});

// Per-play table (play, author, segments, AUC in percent) followed by the
// mean and standard deviation.
std::string AucTable(const AucReport &report);
std::string AucCsv(const AucReport &report);

// Novel protocols. Queries are the explicit quotes of one character in
// one chapter (chapters without such quotes are skipped). CC compares each
// query with per-character collections of all quotes in the other
// chapters; CQ with each quote of the other chapters on its own. Both
// return the mean AUC over queries and throw Error when the novel has
// fewer than two chapters or fewer than two characters with explicit
// quotes, or when no query can be scored.
struct NovelAuc {
  double auc = 0;
  size_t queries = 0;
};
NovelAuc EvalCc(const AnnotatedNovel &novel, const CollectionEncoder &encoder);
NovelAuc EvalCq(const AnnotatedNovel &novel, const CollectionEncoder &encoder);

// The query and target sets used by the novel protocols; one per scored
// query chapter, with segment_id "<novel>/chapter-<k>". Exposed so that
// external encoders can be given the same collection keys.
std::vector<QuerySet> NovelQuerySets(const AnnotatedNovel &novel, bool single_quote_targets);

}  // namespace qa

#endif  // QA_AVEVAL_EVAL_H_
