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

#include "qa/synth/novels.h"

#include <fmt/format.h>

#include "qa/synth/novel_builder.h"
#include "qa/synth/plays.h"
#include "qa/util/errors.h"
#include "qa/util/random.h"

namespace qa {
namespace {

const std::vector<std::string> &Names() {
  static const std::vector<std::string> kNames = {
      "Alder", "Brisk",  "Corwin", "Delphine", "Edmund", "Fenella", "Garrick", "Hester",
      "Ivo",   "Jessamy", "Kestrel", "Lavinia", "Magnus", "Nerissa", "Osric",   "Perdita",
      "Quill", "Rowena", "Silas",   "Tamsin",   "Ulric",  "Verity",  "Wystan",  "Yseult"};
  return kNames;
}

const std::vector<std::string> &Glances() {
  static const std::vector<std::string> kGlances = {"looked at", "turned to", "watched",
                                                    "waited for", "stood by"};
  return kGlances;
}

}  // namespace

std::vector<NovelFiles> GenerateSyntheticNovelFiles(const SyntheticNovelConfig &config,
                                                    uint64_t seed) {
  if (config.characters < 2 || config.characters > config.style_pool ||
      config.characters > Names().size()) {
    throw ValidationError("synthetic novels need 2..style_pool characters");
  }
  if (config.min_block_quotes == 0 || config.min_block_quotes > config.max_block_quotes ||
      config.min_words == 0 || config.min_words > config.max_words) {
    throw ValidationError("bad synthetic novel ranges");
  }
  const std::vector<Style> pool = MakeStylePool(config.style_pool, config.markers_per_style, seed);
  const ContentLexicon lexicon(config.vocabulary, seed);
  std::vector<NovelFiles> out;
  for (size_t n = 0; n < config.novels; ++n) {
    Rng rng(DeriveSeed({seed, Fingerprint("synthetic-novel"), n}));
    const std::string id = fmt::format("N{:02d}", n);
    NovelBuilder b(id);
    const std::vector<size_t> names = rng.Sample(Names().size(), config.characters);
    const std::vector<size_t> styles = rng.Sample(pool.size(), config.characters);
    std::vector<std::string> ids;
    for (size_t c = 0; c < config.characters; ++c) {
      ids.push_back(fmt::format("{}_C{}", id, c));
      b.AddCharacter(ids.back(), Names()[names[c]]);
    }
    auto filler = [&](size_t words) {
      std::string s;
      for (size_t k = 0; k < words; ++k) s += lexicon.Sample(rng) + " ";
      return s + ".";
    };
    auto both = [&](size_t first, size_t second) {
      b.Mention(Names()[names[first]], ids[first]);
      b.Narration(Glances()[rng.Uniform(Glances().size())]);
      b.Mention(Names()[names[second]], ids[second]);
      b.Narration(".");
    };
    for (size_t ch = 0; ch < config.chapters; ++ch) {
      for (size_t blk = 0; blk < config.blocks_per_chapter; ++blk) {
        const std::vector<size_t> pair = rng.Sample(config.characters, 2);
        std::vector<std::string> topic;
        for (size_t k : rng.Sample(lexicon.words().size(), config.topic_words)) {
          topic.push_back(lexicon.words()[k]);
        }
        b.Narration(filler(4 + rng.Uniform(5)));
        const size_t quotes =
            config.min_block_quotes + rng.Uniform(config.max_block_quotes - config.min_block_quotes + 1);
        for (size_t q = 0; q < quotes; ++q) {
          const size_t speaker = pair[rng.Uniform(2)];
          const size_t words = config.min_words + rng.Uniform(config.max_words - config.min_words + 1);
          const std::string content =
              StyledSentence(pool[styles[speaker]], lexicon, words, config.marker_rate,
                             config.punctuation_rate, rng, topic, config.topic_rate);
          const double r = rng.UniformReal();
          QuoteType type = QuoteType::kImplicit;
          if (r < config.explicit_rate) {
            type = QuoteType::kExplicit;
          } else if (r < config.explicit_rate + config.anaphoric_rate) {
            type = QuoteType::kAnaphoric;
          }
          if (type == QuoteType::kExplicit) {
            b.Mention(Names()[names[speaker]], ids[speaker]);
            b.Narration("said ,");
          } else {
            if (rng.Bernoulli(0.5)) {
              both(pair[0], pair[1]);
            } else {
              both(pair[1], pair[0]);
            }
            if (type == QuoteType::kAnaphoric) b.Narration("they said ,");
          }
          b.Quote(content, ids[speaker], type);
        }
      }
      b.EndChapter();
    }
    out.push_back({id, b.text(), b.AnnotationJson()});
  }
  return out;
}

std::vector<AnnotatedNovel> GenerateSyntheticNovels(const SyntheticNovelConfig &config,
                                                    uint64_t seed) {
  std::vector<AnnotatedNovel> out;
  for (NovelFiles &f : GenerateSyntheticNovelFiles(config, seed)) {
    out.push_back(ParseNovel(f.id, std::move(f.text), f.annotation_json));
  }
  return out;
}

AnnotatedNovel RandomFixtureNovel(uint64_t seed) {
  Rng rng(DeriveSeed({seed, Fingerprint("random-fixture-novel")}));
  const std::string id = fmt::format("F{}", seed);
  NovelBuilder b(id);
  const size_t k = 2 + rng.Uniform(4);
  const std::vector<size_t> names = rng.Sample(Names().size(), k);
  std::vector<std::string> ids;
  for (size_t c = 0; c < k; ++c) {
    ids.push_back(fmt::format("{}_C{}", id, c));
    // The first two characters share the family name "Marlowe".
    std::vector<std::string> aliases;
    if (c < 2) aliases = {"Marlowe", Names()[names[c]] + " Marlowe"};
    b.AddCharacter(ids.back(), Names()[names[c]], aliases);
  }
  const size_t pieces = 10 + rng.Uniform(60);
  size_t chapter_start = 0;
  for (size_t p = 0; p < pieces; ++p) {
    const size_t c = rng.Uniform(k);
    switch (rng.Uniform(7)) {
      case 0:
        b.Narration(fmt::format("the {} went on", rng.Uniform(1000)));
        break;
      case 1:
        b.Mention(Names()[names[c]], ids[c]);
        break;
      case 2:
        b.Mention(Names()[names[c]], std::nullopt);
        break;
      case 3:
        b.Mention(rng.Bernoulli(0.5) ? "Marlowe" : "the stranger", std::nullopt);
        break;
      case 4:
      case 5: {
        std::string content;
        const size_t words = 1 + rng.Uniform(12);
        for (size_t w = 0; w < words; ++w) content += (w ? " w" : "w") + std::to_string(w);
        const std::optional<std::string> speaker =
            rng.Bernoulli(0.9) ? std::optional<std::string>(ids[c]) : std::nullopt;
        b.Quote(content, speaker, static_cast<QuoteType>(rng.Uniform(3)));
        break;
      }
      default:
        if (rng.Bernoulli(0.3) && b.tokens() > chapter_start) {
          b.EndChapter();
          chapter_start = b.tokens();
        }
        break;
    }
  }
  if (b.tokens() == 0) b.Narration("end");
  AnnotatedNovel novel = b.Build();
  // Mentions inside or straddling quotes.
  for (const Quote &q : std::vector<Quote>(novel.quotes)) {
    if (!rng.Bernoulli(0.5)) continue;
    const size_t c = rng.Uniform(k);
    const size_t at = q.begin + rng.Uniform(q.end - q.begin + 1);
    Mention m;
    m.begin = rng.Bernoulli(0.3) && at > 0 ? at - 1 : at;
    m.end = at;
    if (rng.Bernoulli(0.7)) m.entity_id = ids[c];
    novel.mentions.push_back(m);
  }
  return ParseNovel(novel.id, novel.text, NovelAnnotationJson(novel));
}

}  // namespace qa
