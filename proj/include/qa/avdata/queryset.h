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

#ifndef QA_AVDATA_QUERYSET_H_
#define QA_AVDATA_QUERYSET_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qa/corpus/play.h"
#include "qa/corpus/stats.h"

namespace qa {

enum class Origin { kQuery, kTarget };

std::string_view OriginName(Origin origin);

// Utterances of one character used as a query or as a target.
struct UtteranceCollection {
  // Stable identifier "<segment>|<character>|<origin>", also the lookup key
  // for externally computed vectors.
  std::string key;
  std::string character_id;
  Origin origin = Origin::kQuery;
  std::vector<size_t> ordinals;  // utterance positions in the segment, sorted
  std::vector<std::string> texts;
};

// Evaluation instance for one segment: a query per eligible character and a
// target per character that speaks in the segment.
struct QuerySet {
  std::string play_id;
  std::string segment_id;
  size_t num_utterances = 0;
  std::vector<UtteranceCollection> queries;
  std::vector<UtteranceCollection> targets;
};

// Minimum utterances for a character to receive a query.
inline constexpr size_t kMinQueryUtterances = 2;
// Minimum utterances for a character to enter training instances.
inline constexpr size_t kMinTrainUtterances = 16;
inline constexpr size_t kTrainSampleSize = 8;

// Splits each character's utterances in half: floor(n/2) sampled without
// replacement form the query, the rest the target. Characters with a single
// utterance only contribute a target. Returns nullopt (segment skipped) when
// fewer than two characters qualify for a query. Deterministic in
// (segment content, seed).
std::optional<QuerySet> BuildEvalQuerySet(const Segment &segment,
                                          std::string_view play_id, uint64_t seed);

// A disjoint query/target pair for one character of a training segment.
struct TrainInstance {
  std::string segment_id;
  std::string character_id;
  UtteranceCollection query;
  UtteranceCollection target;
};

// Samples 2 * sample_size distinct utterances of every character with at
// least kMinTrainUtterances lines: the first half becomes the query, the
// second the target. The sample depends on (seed, epoch, segment id), so
// each epoch draws fresh collections reproducibly.
std::vector<TrainInstance> BuildTrainInstances(const Segment &segment, uint64_t seed,
                                               int epoch,
                                               size_t sample_size = kTrainSampleSize);

SegmentSummary Summarize(const QuerySet &queryset);
SegmentSummary Summarize(const Segment &segment,
                         const std::vector<TrainInstance> &instances);

// One JSON record per collection, for auditing:
// {"character":..., "ordinals":[...], "origin":..., "segment":..., "split":...}
std::string AuditRecords(std::string_view split, const QuerySet &queryset);
std::string AuditRecords(std::string_view split,
                         const std::vector<TrainInstance> &instances);

}  // namespace qa

#endif  // QA_AVDATA_QUERYSET_H_
