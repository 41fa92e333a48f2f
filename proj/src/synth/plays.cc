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

#include "qa/synth/plays.h"

#include <algorithm>
#include <cmath>
#include <set>

#include <fmt/format.h>

#include "qa/corpus/drama_parser.h"
#include "qa/embed/features.h"
#include "qa/util/errors.h"

namespace qa {
namespace {

const std::vector<std::string> kTerminals = {".", "!", "?", ";"};
const std::vector<std::string> kInner = {",", ":", "-", "..."};

}  // namespace

std::vector<Style> MakeStylePool(size_t count, size_t markers_per_style, uint64_t seed) {
  const std::vector<std::string> &words = *FunctionWordList("english");
  if (count * markers_per_style > words.size()) {
    throw ValidationError("style pool needs more marker words than the function-word list has");
  }
  std::vector<std::string> shuffled = words;
  Rng rng(DeriveSeed({seed, Fingerprint("style-pool")}));
  rng.Shuffle(shuffled);
  std::vector<Style> pool(count);
  for (size_t s = 0; s < count; ++s) {
    pool[s].markers.assign(shuffled.begin() + s * markers_per_style,
                           shuffled.begin() + (s + 1) * markers_per_style);
    pool[s].terminal = kTerminals[s % kTerminals.size()];
    pool[s].inner = kInner[(s / kTerminals.size()) % kInner.size()];
  }
  return pool;
}

ContentLexicon::ContentLexicon(size_t size, uint64_t seed) {
  Rng rng(DeriveSeed({seed, Fingerprint("content-lexicon")}));
  const std::vector<std::string> &function_words = *FunctionWordList("english");
  std::set<std::string> seen(function_words.begin(), function_words.end());
  double total = 0;
  while (words_.size() < size) {
    size_t len = 3 + rng.Uniform(8);
    std::string w;
    for (size_t i = 0; i < len; ++i) w += static_cast<char>('a' + rng.Uniform(26));
    if (!seen.insert(w).second) continue;
    words_.push_back(w);
    total += 1.0 / static_cast<double>(words_.size());
    cumulative_.push_back(total);
  }
  for (double &c : cumulative_) c /= total;
}

const std::string &ContentLexicon::Sample(Rng &rng) const {
  double u = rng.UniformReal();
  size_t k = std::lower_bound(cumulative_.begin(), cumulative_.end(), u) - cumulative_.begin();
  return words_[std::min(k, words_.size() - 1)];
}

std::string StyledSentence(const Style &style, const ContentLexicon &lexicon, size_t words,
                           double marker_rate, double punctuation_rate, Rng &rng,
                           const std::vector<std::string> &topic, double topic_rate) {
  std::string out;
  const size_t clause = words > 4 ? 2 + rng.Uniform(words - 3) : words;
  for (size_t i = 0; i < words; ++i) {
    std::string w;
    if (rng.Bernoulli(marker_rate)) {
      w = style.markers[rng.Uniform(style.markers.size())];
    } else if (!topic.empty() && rng.Bernoulli(topic_rate)) {
      w = topic[rng.Uniform(topic.size())];
    } else {
      w = lexicon.Sample(rng);
    }
    if (i == 0) w[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(w[0])));
    if (!out.empty()) out += ' ';
    out += w;
    if (i + 1 == clause && i + 1 < words) {
      out += ' ';
      out += rng.Bernoulli(punctuation_rate) ? style.inner : kInner[rng.Uniform(kInner.size())];
    }
  }
  out += ' ';
  out += rng.Bernoulli(punctuation_rate) ? style.terminal
                                         : kTerminals[rng.Uniform(kTerminals.size())];
  return out;
}

std::vector<std::string> GenerateSyntheticPlayMarkup(const SyntheticPlayConfig &config,
                                                     uint64_t seed) {
  if (config.characters > config.style_pool) {
    throw ValidationError("a play needs at least as many styles as characters");
  }
  if (config.min_lines > config.max_lines || config.min_words > config.max_words ||
      config.min_words == 0) {
    throw ValidationError("synthetic play ranges are inverted or empty");
  }
  std::vector<Style> pool = MakeStylePool(config.style_pool, config.markers_per_style, seed);
  ContentLexicon lexicon(config.vocabulary, seed);
  std::vector<std::string> plays;
  for (size_t p = 0; p < config.plays; ++p) {
    Rng rng(DeriveSeed({seed, Fingerprint("synthetic-play"), p}));
    std::vector<size_t> styles = rng.Sample(pool.size(), config.characters);
    const std::string play_id = fmt::format("P{:02d}", p);
    std::string xml = fmt::format(
        "<play id=\"{0}\" title=\"Synthetic Play {1}\" author=\"Generator {2}\">\n<act n=\"1\">\n",
        play_id, p, p % 7);
    for (size_t s = 0; s < config.scenes; ++s) {
      xml += fmt::format("<scene n=\"{}\">\n", s + 1);
      std::vector<std::string> topic;
      for (size_t k : rng.Sample(lexicon.words().size(), config.topic_words)) {
        topic.push_back(lexicon.words()[k]);
      }
      // Lines per character, then a random speaking order.
      std::vector<size_t> order;
      for (size_t c = 0; c < config.characters; ++c) {
        size_t lines = config.min_lines + rng.Uniform(config.max_lines - config.min_lines + 1);
        order.insert(order.end(), lines, c);
      }
      rng.Shuffle(order);
      for (size_t c : order) {
        size_t words = config.min_words + rng.Uniform(config.max_words - config.min_words + 1);
        xml += fmt::format("<sp who=\"{}_C{}\">{}</sp>\n", play_id, c,
                           StyledSentence(pool[styles[c]], lexicon, words, config.marker_rate,
                                          config.punctuation_rate, rng, topic,
                                          config.topic_rate));
      }
      xml += "</scene>\n";
    }
    xml += "</act>\n</play>\n";
    plays.push_back(std::move(xml));
  }
  return plays;
}

std::vector<Play> GenerateSyntheticPlays(const SyntheticPlayConfig &config, uint64_t seed) {
  std::vector<Play> plays;
  for (const std::string &markup : GenerateSyntheticPlayMarkup(config, seed)) {
    plays.push_back(ParsePlay(markup));
  }
  return plays;
}

}  // namespace qa
