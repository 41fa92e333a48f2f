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

#include "qa/corpus/play.h"

#include <unordered_map>

namespace qa {

std::string_view SegmentKindName(SegmentKind kind) {
  switch (kind) {
    case SegmentKind::kScene: return "scene";
    case SegmentKind::kAct: return "act";
    case SegmentKind::kWholePlay: return "play";
  }
  return "play";
}

std::vector<size_t> Segment::UtteranceCounts() const {
  std::unordered_map<std::string_view, size_t> index;
  for (size_t i = 0; i < characters.size(); ++i) index[characters[i]] = i;
  std::vector<size_t> counts(characters.size(), 0);
  for (const Utterance &u : utterances) ++counts[index.at(u.speaker_id)];
  return counts;
}

std::vector<size_t> Segment::UtterancesOf(std::string_view character_id) const {
  std::vector<size_t> out;
  for (size_t i = 0; i < utterances.size(); ++i) {
    if (utterances[i].speaker_id == character_id) out.push_back(i);
  }
  return out;
}

Segment MakeSegment(std::string id, SegmentKind kind,
                    std::vector<Utterance> utterances) {
  Segment segment;
  segment.id = std::move(id);
  segment.kind = kind;
  segment.utterances = std::move(utterances);
  std::unordered_map<std::string_view, bool> seen;
  for (size_t i = 0; i < segment.utterances.size(); ++i) {
    Utterance &u = segment.utterances[i];
    u.ordinal = i;
    if (seen.emplace(u.speaker_id, true).second) {
      segment.characters.push_back(u.speaker_id);
    }
  }
  return segment;
}

Segment Play::WholePlay() const {
  return MakeSegment(id + "/play", SegmentKind::kWholePlay, utterances);
}

}  // namespace qa
