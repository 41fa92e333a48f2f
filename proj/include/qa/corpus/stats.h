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

#ifndef QA_CORPUS_STATS_H_
#define QA_CORPUS_STATS_H_

#include <string>
#include <vector>

namespace qa {

// Counts for one evaluated segment: its utterances, the queries built from
// it, and the targets every one of those queries is compared against.
struct SegmentSummary {
  size_t utterances = 0;
  size_t queries = 0;
  size_t targets = 0;
};

// One row of the corpus summary table.
struct SplitStats {
  std::string split;
  size_t segments = 0;    // segments contributing at least one query
  size_t utterances = 0;  // utterances in those segments
  size_t queries = 0;
  double targets_per_query = 0.0;  // averaged over queries
};

struct CorpusStats {
  std::vector<SplitStats> rows;
};

SplitStats ComputeSplitStats(std::string split,
                             const std::vector<SegmentSummary> &segments);

// Table with columns split, segments, utterances, queries, targets/query.
std::string StatsCsv(const CorpusStats &stats);
std::string StatsTable(const CorpusStats &stats);

}  // namespace qa

#endif  // QA_CORPUS_STATS_H_
