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

#include "qa/corpus/stats.h"

#include "qa/util/io.h"
#include "qa/util/table.h"

namespace qa {

SplitStats ComputeSplitStats(std::string split,
                             const std::vector<SegmentSummary> &segments) {
  SplitStats row;
  row.split = std::move(split);
  size_t target_sum = 0;
  for (const SegmentSummary &s : segments) {
    if (s.queries == 0) continue;
    ++row.segments;
    row.utterances += s.utterances;
    row.queries += s.queries;
    target_sum += s.queries * s.targets;
  }
  if (row.queries > 0) {
    row.targets_per_query =
        static_cast<double>(target_sum) / static_cast<double>(row.queries);
  }
  return row;
}

namespace {

TextTable MakeTable(const CorpusStats &stats, int digits) {
  TextTable table({"Split", "Segments", "Utterances", "Queries", "Targets/Query (avg)"});
  for (const SplitStats &row : stats.rows) {
    table.AddRow({row.split, std::to_string(row.segments), std::to_string(row.utterances),
                  std::to_string(row.queries), FormatFixed(row.targets_per_query, digits)});
  }
  return table;
}

}  // namespace

std::string StatsCsv(const CorpusStats &stats) { return MakeTable(stats, 4).Csv(); }

std::string StatsTable(const CorpusStats &stats) { return MakeTable(stats, 1).Render(); }

}  // namespace qa
