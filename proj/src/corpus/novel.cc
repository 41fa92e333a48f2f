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

#include "qa/corpus/novel.h"

#include <algorithm>
#include <set>

#include <nlohmann/json.hpp>

#include "qa/util/errors.h"
#include "qa/util/io.h"

namespace qa {

using nlohmann::json;

std::string_view QuoteTypeName(QuoteType type) {
  switch (type) {
    case QuoteType::kExplicit: return "explicit";
    case QuoteType::kAnaphoric: return "anaphoric";
    case QuoteType::kImplicit: return "implicit";
  }
  return "implicit";
}

std::optional<QuoteType> ParseQuoteType(std::string_view name) {
  if (name == "explicit") return QuoteType::kExplicit;
  if (name == "anaphoric") return QuoteType::kAnaphoric;
  if (name == "implicit") return QuoteType::kImplicit;
  return std::nullopt;
}

std::string_view AnnotatedNovel::Span(size_t begin, size_t end) const {
  if (begin > end || end >= tokens.size()) return {};
  size_t b = tokens[begin].begin;
  size_t e = tokens[end].end;
  return std::string_view(text).substr(b, e - b);
}

const Character *AnnotatedNovel::FindCharacter(std::string_view cid) const {
  for (const Character &c : characters) {
    if (c.id == cid) return &c;
  }
  return nullptr;
}

std::optional<size_t> AnnotatedNovel::QuoteAt(size_t token) const {
  auto it = std::upper_bound(
      quotes.begin(), quotes.end(), token,
      [](size_t t, const Quote &q) { return t < q.begin; });
  if (it == quotes.begin()) return std::nullopt;
  --it;
  if (token <= it->end) return static_cast<size_t>(it - quotes.begin());
  return std::nullopt;
}

size_t AnnotatedNovel::QuoteCount(std::string_view speaker_id) const {
  size_t n = 0;
  for (const Quote &q : quotes) {
    if (q.speaker_id && *q.speaker_id == speaker_id) ++n;
  }
  return n;
}

namespace {

// Fetches a required non-negative integer field.
size_t Index(const json &record, const char *field, const std::string &where) {
  auto it = record.find(field);
  if (it == record.end() || !it->is_number_integer() || it->get<long long>() < 0) {
    throw ValidationError(where + ": missing or invalid " + field);
  }
  return it->get<size_t>();
}

std::optional<std::string> OptionalId(const json &record, const char *field,
                                      const std::string &where) {
  auto it = record.find(field);
  if (it == record.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) throw ValidationError(where + ": " + field + " must be a string");
  return it->get<std::string>();
}

const json &Array(const json &doc, const char *field) {
  static const json kEmpty = json::array();
  auto it = doc.find(field);
  if (it == doc.end()) return kEmpty;
  if (!it->is_array()) throw ValidationError(std::string(field) + " must be an array");
  return *it;
}

}  // namespace

void ValidateNovel(AnnotatedNovel &novel) {
  const size_t n = novel.tokens.size();

  std::set<std::string> ids;
  for (Character &c : novel.characters) {
    if (c.id.empty()) throw ValidationError("character with empty id");
    if (!ids.insert(c.id).second) {
      throw ValidationError("character " + c.id + ": duplicate id");
    }
    if (c.name.empty()) c.name = c.id;
    if (std::find(c.aliases.begin(), c.aliases.end(), c.name) == c.aliases.end()) {
      c.aliases.insert(c.aliases.begin(), c.name);
    }
  }

  if (n == 0) {
    if (!novel.chapters.empty()) throw ValidationError("chapters given for an empty text");
  } else {
    if (novel.chapters.empty()) throw ValidationError("no chapters: chapters must partition the text");
    size_t expected = 0;
    for (size_t k = 0; k < novel.chapters.size(); ++k) {
      const Chapter &ch = novel.chapters[k];
      if (ch.begin != expected || ch.end < ch.begin || ch.end >= n) {
        throw ValidationError("chapter " + std::to_string(k) +
                              ": chapters must partition tokens [0, " +
                              std::to_string(n) + ")");
      }
      expected = ch.end + 1;
    }
    if (expected != n) {
      throw ValidationError("chapters end at token " + std::to_string(expected) +
                            " but the text has " + std::to_string(n) + " tokens");
    }
  }

  std::set<std::string> quote_ids;
  for (const Quote &q : novel.quotes) {
    const std::string where = "quote " + q.id;
    if (q.id.empty()) throw ValidationError("quote with empty id");
    if (!quote_ids.insert(q.id).second) throw ValidationError(where + ": duplicate id");
    if (q.begin > q.end || q.end >= n) {
      throw ValidationError(where + ": token range out of bounds");
    }
    if (q.speaker_id && !ids.count(*q.speaker_id)) {
      throw ValidationError(where + ": unknown speaker " + *q.speaker_id);
    }
    if (q.chapter >= novel.chapters.size()) {
      throw ValidationError(where + ": unknown chapter " + std::to_string(q.chapter));
    }
    const Chapter &ch = novel.chapters[q.chapter];
    if (q.begin < ch.begin || q.end > ch.end) {
      throw ValidationError(where + ": not inside chapter " + std::to_string(q.chapter));
    }
  }
  std::stable_sort(novel.quotes.begin(), novel.quotes.end(),
                   [](const Quote &a, const Quote &b) { return a.begin < b.begin; });
  for (size_t k = 1; k < novel.quotes.size(); ++k) {
    if (novel.quotes[k].begin <= novel.quotes[k - 1].end) {
      throw ValidationError("quote " + novel.quotes[k].id + ": overlaps quote " +
                            novel.quotes[k - 1].id);
    }
  }

  for (size_t k = 0; k < novel.mentions.size(); ++k) {
    Mention &m = novel.mentions[k];
    const std::string where = "mention " + std::to_string(k);
    if (m.begin > m.end || m.end >= n) {
      throw ValidationError(where + ": token range out of bounds");
    }
    if (m.entity_id && !ids.count(*m.entity_id)) {
      throw ValidationError(where + ": unknown entity " + *m.entity_id);
    }
    // A mention is quote-internal when any of its tokens lies in a quote.
    auto it = std::upper_bound(
        novel.quotes.begin(), novel.quotes.end(), m.end,
        [](size_t t, const Quote &q) { return t < q.begin; });
    m.quote_internal = it != novel.quotes.begin() && std::prev(it)->end >= m.begin;
  }
  std::stable_sort(novel.mentions.begin(), novel.mentions.end(),
                   [](const Mention &a, const Mention &b) {
                     return a.begin != b.begin ? a.begin < b.begin : a.end < b.end;
                   });
}

AnnotatedNovel ParseNovel(std::string id, std::string text,
                          std::string_view annotation_json) {
  json doc;
  try {
    doc = json::parse(annotation_json);
  } catch (const json::parse_error &e) {
    throw ValidationError(std::string("annotation is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ValidationError("annotation must be a JSON object");

  AnnotatedNovel novel;
  novel.id = std::move(id);
  novel.text = std::move(text);
  novel.tokens = Tokenize(novel.text);

  const json &characters = Array(doc, "characters");
  for (size_t k = 0; k < characters.size(); ++k) {
    const json &r = characters[k];
    const std::string where = "character " + std::to_string(k);
    if (!r.is_object() || !r.contains("id") || !r["id"].is_string()) {
      throw ValidationError(where + ": missing id");
    }
    Character c;
    c.id = r["id"].get<std::string>();
    c.name = r.value("name", c.id);
    if (r.contains("aliases")) {
      if (!r["aliases"].is_array()) throw ValidationError(where + ": aliases must be an array");
      for (const json &a : r["aliases"]) {
        if (!a.is_string()) throw ValidationError(where + ": alias must be a string");
        c.aliases.push_back(a.get<std::string>());
      }
    }
    novel.characters.push_back(std::move(c));
  }

  const json &chapters = Array(doc, "chapters");
  for (size_t k = 0; k < chapters.size(); ++k) {
    const std::string where = "chapter " + std::to_string(k);
    novel.chapters.push_back(Chapter{Index(chapters[k], "start_tok", where),
                                     Index(chapters[k], "end_tok", where)});
  }

  const json &quotes = Array(doc, "quotes");
  for (size_t k = 0; k < quotes.size(); ++k) {
    const json &r = quotes[k];
    Quote q;
    if (r.contains("id") && r["id"].is_string()) {
      q.id = r["id"].get<std::string>();
    } else if (r.contains("id") && r["id"].is_number_integer()) {
      q.id = std::to_string(r["id"].get<long long>());
    } else {
      throw ValidationError("quote " + std::to_string(k) + ": missing id");
    }
    const std::string where = "quote " + q.id;
    q.begin = Index(r, "start_tok", where);
    q.end = Index(r, "end_tok", where);
    q.chapter = Index(r, "chapter", where);
    std::string type = r.value("type", "");
    auto parsed = ParseQuoteType(type);
    if (!parsed) throw ValidationError(where + ": unknown quote type '" + type + "'");
    q.type = *parsed;
    q.speaker_id = OptionalId(r, "speaker_id", where);
    novel.quotes.push_back(std::move(q));
  }

  const json &mentions = Array(doc, "mentions");
  for (size_t k = 0; k < mentions.size(); ++k) {
    const std::string where = "mention " + std::to_string(k);
    Mention m;
    m.begin = Index(mentions[k], "start_tok", where);
    m.end = Index(mentions[k], "end_tok", where);
    m.entity_id = OptionalId(mentions[k], "entity_id", where);
    novel.mentions.push_back(std::move(m));
  }

  ValidateNovel(novel);
  return novel;
}

AnnotatedNovel LoadNovel(const std::filesystem::path &text_path,
                         const std::filesystem::path &annotation_path) {
  std::string text = ReadFile(text_path);
  std::string annotation = ReadFile(annotation_path);
  try {
    return ParseNovel(text_path.stem().string(), std::move(text), annotation);
  } catch (const ValidationError &e) {
    throw ValidationError(annotation_path.filename().string() + ": " + e.what());
  }
}

std::string NovelAnnotationJson(const AnnotatedNovel &novel) {
  json doc;
  doc["characters"] = json::array();
  for (const Character &c : novel.characters) {
    doc["characters"].push_back({{"id", c.id}, {"name", c.name}, {"aliases", c.aliases}});
  }
  doc["chapters"] = json::array();
  for (const Chapter &ch : novel.chapters) {
    doc["chapters"].push_back({{"start_tok", ch.begin}, {"end_tok", ch.end}});
  }
  doc["quotes"] = json::array();
  for (const Quote &q : novel.quotes) {
    json r = {{"id", q.id},
              {"start_tok", q.begin},
              {"end_tok", q.end},
              {"type", QuoteTypeName(q.type)},
              {"chapter", q.chapter}};
    r["speaker_id"] = q.speaker_id ? json(*q.speaker_id) : json(nullptr);
    doc["quotes"].push_back(std::move(r));
  }
  doc["mentions"] = json::array();
  for (const Mention &m : novel.mentions) {
    json r = {{"start_tok", m.begin}, {"end_tok", m.end}};
    r["entity_id"] = m.entity_id ? json(*m.entity_id) : json(nullptr);
    doc["mentions"].push_back(std::move(r));
  }
  return doc.dump(1) + "\n";
}

}  // namespace qa
