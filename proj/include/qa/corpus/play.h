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

#ifndef QA_CORPUS_PLAY_H_
#define QA_CORPUS_PLAY_H_

#include <string>
#include <string_view>
#include <vector>

namespace qa {

struct Character {
  std::string id;
  std::string name;
  // Always contains name.
  std::vector<std::string> aliases;
};

// One speaker-attributed line.
struct Utterance {
  std::string speaker_id;
  std::string text;
  size_t ordinal = 0;  // position within the owning segment
  int line = 0;        // source line of the opening <sp> tag
};

enum class SegmentKind { kScene, kAct, kWholePlay };

std::string_view SegmentKindName(SegmentKind kind);

struct Segment {
  std::string id;
  SegmentKind kind = SegmentKind::kWholePlay;
  std::vector<Utterance> utterances;
  // Speaker ids in order of first appearance.
  std::vector<std::string> characters;

  // Number of utterances by each speaker, aligned with characters.
  std::vector<size_t> UtteranceCounts() const;
  // Utterance indices spoken by character_id, in source order.
  std::vector<size_t> UtterancesOf(std::string_view character_id) const;
};

struct Play {
  std::string id;
  std::string title;
  std::string author;
  // Scene segmentation when the play has <scene> tags, else act
  // segmentation, else a single whole-play segment.
  std::vector<Segment> segments;
  std::vector<Character> characters;
  // False when the play has neither <scene> nor <act> markup.
  bool scene_eligible = false;
  // Every line of the play in source order, including lines that fall
  // outside any scene of a scene-segmented play.
  std::vector<Utterance> utterances;
  // <sp> blocks skipped because they named several speakers or were empty.
  size_t skipped_blocks = 0;

  // All utterances as one segment with id "<play id>/play".
  Segment WholePlay() const;
};

// Builds a segment from utterances, renumbering ordinals and deriving the
// character list.
Segment MakeSegment(std::string id, SegmentKind kind,
                    std::vector<Utterance> utterances);

}  // namespace qa

#endif  // QA_CORPUS_PLAY_H_
