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

#include "qa/corpus/serialize.h"

#include <nlohmann/json.hpp>

#include "qa/util/errors.h"

namespace qa {
namespace {

using nlohmann::json;

json UtterancesJson(const std::vector<Utterance> &utterances) {
  json out = json::array();
  for (const Utterance &u : utterances) {
    out.push_back({{"speaker", u.speaker_id}, {"text", u.text}, {"line", u.line}});
  }
  return out;
}

std::vector<Utterance> ParseUtterances(const json &j) {
  std::vector<Utterance> out;
  for (const json &u : j) {
    Utterance x;
    x.speaker_id = u.at("speaker").get<std::string>();
    x.text = u.at("text").get<std::string>();
    x.line = u.at("line").get<int>();
    x.ordinal = out.size();
    out.push_back(std::move(x));
  }
  return out;
}

SegmentKind ParseKind(const std::string &name) {
  for (SegmentKind k : {SegmentKind::kScene, SegmentKind::kAct, SegmentKind::kWholePlay}) {
    if (SegmentKindName(k) == name) return k;
  }
  throw Error("unknown segment kind '" + name + "'");
}

}  // namespace

std::string PlaysToJson(const std::vector<Play> &plays) {
  json out = json::array();
  for (const Play &p : plays) {
    json characters = json::array();
    for (const Character &c : p.characters) {
      characters.push_back({{"id", c.id}, {"name", c.name}, {"aliases", c.aliases}});
    }
    json segments = json::array();
    for (const Segment &s : p.segments) {
      segments.push_back({{"id", s.id},
                          {"kind", std::string(SegmentKindName(s.kind))},
                          {"utterances", UtterancesJson(s.utterances)}});
    }
    out.push_back({{"id", p.id},
                   {"title", p.title},
                   {"author", p.author},
                   {"scene_eligible", p.scene_eligible},
                   {"skipped_blocks", p.skipped_blocks},
                   {"characters", characters},
                   {"utterances", UtterancesJson(p.utterances)},
                   {"segments", segments}});
  }
  return out.dump(1) + "\n";
}

std::vector<Play> PlaysFromJson(std::string_view text) {
  std::vector<Play> plays;
  try {
    const json doc = json::parse(text);
    for (const json &j : doc) {
      Play p;
      p.id = j.at("id").get<std::string>();
      p.title = j.at("title").get<std::string>();
      p.author = j.at("author").get<std::string>();
      p.scene_eligible = j.at("scene_eligible").get<bool>();
      p.skipped_blocks = j.at("skipped_blocks").get<size_t>();
      for (const json &c : j.at("characters")) {
        p.characters.push_back({c.at("id").get<std::string>(), c.at("name").get<std::string>(),
                                c.at("aliases").get<std::vector<std::string>>()});
      }
      p.utterances = ParseUtterances(j.at("utterances"));
      for (const json &s : j.at("segments")) {
        p.segments.push_back(MakeSegment(s.at("id").get<std::string>(),
                                         ParseKind(s.at("kind").get<std::string>()),
                                         ParseUtterances(s.at("utterances"))));
      }
      plays.push_back(std::move(p));
    }
  } catch (const json::exception &e) {
    throw Error(std::string("malformed corpus file: ") + e.what());
  }
  return plays;
}

}  // namespace qa
