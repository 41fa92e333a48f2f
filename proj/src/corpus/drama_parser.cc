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

#include "qa/corpus/drama_parser.h"

#include <map>
#include <optional>
#include <string>
#include <unordered_set>

#include "qa/util/errors.h"
#include "qa/util/io.h"

namespace qa {
namespace {

struct Tag {
  std::string name;
  std::map<std::string, std::string> attributes;
  bool closing = false;
  bool self_closing = false;
  int line = 0;
};

bool IsNameStart(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}

bool IsNameChar(char c) {
  return IsNameStart(c) || (c >= '0' && c <= '9') || c == '-' || c == '.' ||
         c == ':';
}

bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r';
}

void AppendUtf8(uint32_t cp, std::string *out) {
  if (cp < 0x80) {
    out->push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out->push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out->push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out->push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

// Decodes XML entities. Unknown entities are kept verbatim.
std::string DecodeEntities(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '&') {
      out.push_back(text[i]);
      continue;
    }
    size_t semi = text.find(';', i);
    if (semi == std::string_view::npos || semi - i > 10) {
      out.push_back('&');
      continue;
    }
    std::string_view ent = text.substr(i + 1, semi - i - 1);
    std::optional<uint32_t> cp;
    if (ent == "amp") cp = '&';
    else if (ent == "lt") cp = '<';
    else if (ent == "gt") cp = '>';
    else if (ent == "quot") cp = '"';
    else if (ent == "apos") cp = '\'';
    else if (ent.size() > 1 && ent[0] == '#') {
      try {
        bool hex = ent[1] == 'x' || ent[1] == 'X';
        std::string digits(ent.substr(hex ? 2 : 1));
        size_t used = 0;
        unsigned long v = std::stoul(digits, &used, hex ? 16 : 10);
        if (used == digits.size() && v <= 0x10FFFF) cp = static_cast<uint32_t>(v);
      } catch (const std::exception &) {
      }
    }
    if (cp) {
      AppendUtf8(*cp, &out);
      i = semi;
    } else {
      out.push_back('&');
    }
  }
  return out;
}

// Collapses whitespace runs to one space and trims.
std::string NormalizeSpace(std::string_view text) {
  std::string out;
  bool pending = false;
  for (char c : text) {
    if (IsSpace(c)) {
      pending = !out.empty();
    } else {
      if (pending) out.push_back(' ');
      pending = false;
      out.push_back(c);
    }
  }
  return out;
}

class Scanner {
 public:
  explicit Scanner(std::string_view src) : src_(src) {}

  bool AtEnd() const { return pos_ >= src_.size(); }
  int line() const { return line_; }

  // Reads character data up to the next '<'.
  std::string_view Text() {
    size_t start = pos_;
    while (pos_ < src_.size() && src_[pos_] != '<') Advance();
    return src_.substr(start, pos_ - start);
  }

  // Reads a markup construct starting at '<'. Returns nullopt for comments,
  // processing instructions and declarations.
  std::optional<Tag> Markup() {
    int start_line = line_;
    if (Match("<!--")) {
      SkipPast("-->", start_line, "unterminated comment");
      return std::nullopt;
    }
    if (Match("<?")) {
      SkipPast("?>", start_line, "unterminated processing instruction");
      return std::nullopt;
    }
    if (Match("<!")) {
      SkipPast(">", start_line, "unterminated declaration");
      return std::nullopt;
    }
    Advance();  // '<'
    Tag tag;
    tag.line = start_line;
    if (Peek() == '/') {
      tag.closing = true;
      Advance();
    }
    tag.name = Name(start_line);
    for (;;) {
      SkipSpace();
      if (AtEnd()) throw ParseError("unterminated tag <" + tag.name + ">", start_line);
      char c = Peek();
      if (c == '>') {
        Advance();
        break;
      }
      if (c == '/' && !tag.closing) {
        Advance();
        if (Peek() != '>') throw ParseError("malformed tag <" + tag.name + ">", line_);
        Advance();
        tag.self_closing = true;
        break;
      }
      if (tag.closing) throw ParseError("malformed closing tag </" + tag.name + ">", line_);
      std::string attr = Name(line_);
      SkipSpace();
      if (Peek() != '=') throw ParseError("attribute " + attr + " lacks a value", line_);
      Advance();
      SkipSpace();
      if (Peek() != '"') {
        throw ParseError("attribute " + attr + " must be double-quoted", line_);
      }
      Advance();
      size_t start = pos_;
      while (!AtEnd() && Peek() != '"') {
        if (Peek() == '<') throw ParseError("'<' inside attribute " + attr, line_);
        Advance();
      }
      if (AtEnd()) throw ParseError("unterminated attribute " + attr, start_line);
      std::string value = DecodeEntities(src_.substr(start, pos_ - start));
      Advance();
      if (!tag.attributes.emplace(attr, std::move(value)).second) {
        throw ParseError("duplicate attribute " + attr, line_);
      }
    }
    return tag;
  }

 private:
  char Peek() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }

  void Advance() {
    if (src_[pos_] == '\n') ++line_;
    ++pos_;
  }

  bool Match(std::string_view prefix) {
    if (src_.substr(pos_, prefix.size()) != prefix) return false;
    for (size_t i = 0; i < prefix.size(); ++i) Advance();
    return true;
  }

  void SkipPast(std::string_view terminator, int start_line, const char *what) {
    while (!AtEnd()) {
      if (Match(terminator)) return;
      Advance();
    }
    throw ParseError(what, start_line);
  }

  void SkipSpace() {
    while (!AtEnd() && IsSpace(Peek())) Advance();
  }

  std::string Name(int line) {
    if (AtEnd() || !IsNameStart(Peek())) throw ParseError("malformed tag", line);
    size_t start = pos_;
    while (!AtEnd() && IsNameChar(Peek())) Advance();
    return std::string(src_.substr(start, pos_ - start));
  }

  std::string_view src_;
  size_t pos_ = 0;
  int line_ = 1;
};

struct RawLine {
  std::string speaker;
  std::string text;
  int line = 0;
  int act = -1;
  int scene = -1;
};

struct OpenElement {
  std::string name;
  int line = 0;
};

bool IsStructural(const std::string &name) {
  return name == "play" || name == "act" || name == "scene" || name == "sp";
}

}  // namespace

Play ParsePlay(std::string_view markup) {
  Scanner scanner(markup);
  Play play;
  std::vector<OpenElement> stack;
  std::vector<RawLine> lines;
  bool seen_play = false;
  bool closed_play = false;
  int acts = 0;
  int scenes = 0;
  int current_act = -1;
  int current_scene = -1;
  int skip_depth = 0;  // depth inside ignored elements
  std::optional<RawLine> sp;
  bool sp_skipped = false;

  while (!scanner.AtEnd()) {
    std::string_view text = scanner.Text();
    if (!text.empty()) {
      if (sp && skip_depth == 0) sp->text.append(text);
      if (!seen_play || closed_play) {
        if (!NormalizeSpace(text).empty()) {
          throw ParseError("text outside <play>", scanner.line());
        }
      }
    }
    if (scanner.AtEnd()) break;
    std::optional<Tag> maybe_tag = scanner.Markup();
    if (!maybe_tag) continue;
    Tag &tag = *maybe_tag;

    if (tag.closing) {
      if (stack.empty() || stack.back().name != tag.name) {
        std::string expected = stack.empty() ? "nothing" : "</" + stack.back().name + ">";
        throw ParseError("unexpected </" + tag.name + ">, expected " + expected,
                         tag.line);
      }
      stack.pop_back();
      if (skip_depth > 0) {
        --skip_depth;
        continue;
      }
      if (tag.name == "sp") {
        if (!sp_skipped) {
          sp->text = NormalizeSpace(DecodeEntities(sp->text));
          if (sp->text.empty()) {
            ++play.skipped_blocks;
          } else {
            lines.push_back(std::move(*sp));
          }
        }
        sp.reset();
        sp_skipped = false;
      } else if (tag.name == "scene") {
        current_scene = -1;
      } else if (tag.name == "act") {
        current_act = -1;
      } else if (tag.name == "play") {
        closed_play = true;
      }
      continue;
    }

    if (closed_play) throw ParseError("content after </play>", tag.line);
    if (!seen_play && tag.name != "play") {
      throw ParseError("expected <play> root, found <" + tag.name + ">", tag.line);
    }
    if (skip_depth > 0 || !IsStructural(tag.name)) {
      if (!tag.self_closing) {
        stack.push_back({tag.name, tag.line});
        ++skip_depth;
      }
      continue;
    }

    const std::string parent = stack.empty() ? "" : stack.back().name;
    if (sp) throw ParseError("<" + tag.name + "> nested inside <sp>", tag.line);
    if (tag.name == "play") {
      if (seen_play) throw ParseError("nested <play>", tag.line);
      seen_play = true;
      auto id = tag.attributes.find("id");
      if (id == tag.attributes.end() || id->second.empty()) {
        throw ParseError("<play> lacks an id attribute", tag.line);
      }
      play.id = id->second;
      if (auto it = tag.attributes.find("title"); it != tag.attributes.end()) {
        play.title = it->second;
      }
      if (auto it = tag.attributes.find("author"); it != tag.attributes.end()) {
        play.author = it->second;
      }
    } else if (tag.name == "act") {
      if (parent != "play") throw ParseError("<act> must be a child of <play>", tag.line);
      current_act = acts++;
    } else if (tag.name == "scene") {
      if (parent != "play" && parent != "act") {
        throw ParseError("<scene> must be inside <play> or <act>", tag.line);
      }
      current_scene = scenes++;
    } else if (tag.name == "sp") {
      auto who = tag.attributes.find("who");
      if (who == tag.attributes.end()) {
        throw ParseError("<sp> lacks a who attribute", tag.line);
      }
      std::string speaker = NormalizeSpace(who->second);
      if (speaker.empty()) throw ParseError("<sp> has an empty who attribute", tag.line);
      sp = RawLine{speaker, "", tag.line, current_act, current_scene};
      sp_skipped = speaker.find(',') != std::string::npos;
      if (sp_skipped) ++play.skipped_blocks;
    }
    if (tag.self_closing) {
      if (tag.name == "sp") {
        if (!sp_skipped) ++play.skipped_blocks;
        sp.reset();
        sp_skipped = false;
      } else if (tag.name == "play") {
        closed_play = true;
      } else if (tag.name == "scene") {
        current_scene = -1;
      } else if (tag.name == "act") {
        current_act = -1;
      }
    } else {
      stack.push_back({tag.name, tag.line});
    }
  }

  if (!stack.empty()) {
    throw ParseError("unclosed <" + stack.back().name + ">", stack.back().line);
  }
  if (!seen_play) throw ParseError("no <play> element", scanner.line());

  std::unordered_set<std::string> known;
  for (const RawLine &l : lines) {
    if (known.insert(l.speaker).second) {
      play.characters.push_back(Character{l.speaker, l.speaker, {l.speaker}});
    }
    Utterance u;
    u.speaker_id = l.speaker;
    u.text = l.text;
    u.ordinal = play.utterances.size();
    u.line = l.line;
    play.utterances.push_back(std::move(u));
  }

  play.scene_eligible = scenes > 0 || acts > 0;
  if (!play.scene_eligible) {
    play.segments.push_back(play.WholePlay());
    return play;
  }
  bool by_scene = scenes > 0;
  int units = by_scene ? scenes : acts;
  std::vector<std::vector<Utterance>> grouped(units);
  for (size_t i = 0; i < lines.size(); ++i) {
    int unit = by_scene ? lines[i].scene : lines[i].act;
    if (unit >= 0) grouped[unit].push_back(play.utterances[i]);
  }
  for (int k = 0; k < units; ++k) {
    if (grouped[k].empty()) continue;
    std::string id = play.id + (by_scene ? "/scene-" : "/act-") + std::to_string(k + 1);
    play.segments.push_back(MakeSegment(
        std::move(id), by_scene ? SegmentKind::kScene : SegmentKind::kAct,
        std::move(grouped[k])));
  }
  return play;
}

Play LoadPlay(const std::filesystem::path &path) {
  std::string markup = ReadFile(path);
  try {
    return ParsePlay(markup);
  } catch (const ParseError &e) {
    throw Error(path.filename().string() + ": " + e.what());
  }
}

}  // namespace qa
