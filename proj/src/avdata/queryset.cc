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

#include "qa/avdata/queryset.h"

#include <algorithm>

#include <nlohmann/json.hpp>

#include "qa/util/random.h"

namespace qa {

std::string_view OriginName(Origin origin) {
  return origin == Origin::kQuery ? "query" : "target";
}

namespace {

UtteranceCollection Collect(const Segment &segment, const std::string &character,
                            Origin origin, std::vector<size_t> ordinals) {
  std::sort(ordinals.begin(), ordinals.end());
  UtteranceCollection c;
  c.key = segment.id + "|" + character + "|" + std::string(OriginName(origin));
  c.character_id = character;
  c.origin = origin;
  for (size_t i : ordinals) c.texts.push_back(segment.utterances[i].text);
  c.ordinals = std::move(ordinals);
  return c;
}

}  // namespace

std::optional<QuerySet> BuildEvalQuerySet(const Segment &segment,
                                          std::string_view play_id, uint64_t seed) {
  std::vector<size_t> counts = segment.UtteranceCounts();
  size_t eligible = 0;
  for (size_t n : counts) eligible += n >= kMinQueryUtterances;
  if (eligible < 2) return std::nullopt;

  Rng rng(DeriveSeed({seed, Fingerprint(segment.id)}));
  QuerySet qs;
  qs.play_id = std::string(play_id);
  qs.segment_id = segment.id;
  qs.num_utterances = segment.utterances.size();
  for (const std::string &character : segment.characters) {
    std::vector<size_t> lines = segment.UtterancesOf(character);
    if (lines.size() < kMinQueryUtterances) {
      qs.targets.push_back(Collect(segment, character, Origin::kTarget, lines));
      continue;
    }
    std::vector<size_t> picked = rng.Sample(lines.size(), lines.size() / 2);
    std::vector<bool> in_query(lines.size(), false);
    for (size_t p : picked) in_query[p] = true;
    std::vector<size_t> query, target;
    for (size_t k = 0; k < lines.size(); ++k) {
      (in_query[k] ? query : target).push_back(lines[k]);
    }
    qs.queries.push_back(Collect(segment, character, Origin::kQuery, std::move(query)));
    qs.targets.push_back(Collect(segment, character, Origin::kTarget, std::move(target)));
  }
  return qs;
}

std::vector<TrainInstance> BuildTrainInstances(const Segment &segment, uint64_t seed,
                                               int epoch, size_t sample_size) {
  std::vector<TrainInstance> out;
  const size_t needed = std::max(kMinTrainUtterances, 2 * sample_size);
  Rng rng(DeriveSeed({seed, static_cast<uint64_t>(epoch), Fingerprint(segment.id)}));
  for (const std::string &character : segment.characters) {
    std::vector<size_t> lines = segment.UtterancesOf(character);
    if (lines.size() < needed) continue;
    std::vector<size_t> picked = rng.Sample(lines.size(), 2 * sample_size);
    std::vector<size_t> query, target;
    for (size_t k = 0; k < picked.size(); ++k) {
      (k < sample_size ? query : target).push_back(lines[picked[k]]);
    }
    TrainInstance inst;
    inst.segment_id = segment.id;
    inst.character_id = character;
    inst.query = Collect(segment, character, Origin::kQuery, std::move(query));
    inst.target = Collect(segment, character, Origin::kTarget, std::move(target));
    out.push_back(std::move(inst));
  }
  return out;
}

SegmentSummary Summarize(const QuerySet &queryset) {
  return SegmentSummary{queryset.num_utterances, queryset.queries.size(),
                        queryset.targets.size()};
}

SegmentSummary Summarize(const Segment &segment,
                         const std::vector<TrainInstance> &instances) {
  return SegmentSummary{segment.utterances.size(), instances.size(), instances.size()};
}

namespace {

std::string Record(std::string_view split, std::string_view segment,
                   const UtteranceCollection &c) {
  nlohmann::json r = {{"split", split},
                      {"segment", segment},
                      {"character", c.character_id},
                      {"origin", OriginName(c.origin)},
                      {"ordinals", c.ordinals}};
  return r.dump() + "\n";
}

}  // namespace

std::string AuditRecords(std::string_view split, const QuerySet &queryset) {
  std::string out;
  for (const auto &c : queryset.queries) out += Record(split, queryset.segment_id, c);
  for (const auto &c : queryset.targets) out += Record(split, queryset.segment_id, c);
  return out;
}

std::string AuditRecords(std::string_view split,
                         const std::vector<TrainInstance> &instances) {
  std::string out;
  for (const auto &inst : instances) {
    out += Record(split, inst.segment_id, inst.query);
    out += Record(split, inst.segment_id, inst.target);
  }
  return out;
}

}  // namespace qa
