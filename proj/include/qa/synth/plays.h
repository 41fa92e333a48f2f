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

#ifndef QA_SYNTH_PLAYS_H_
#define QA_SYNTH_PLAYS_H_

#include <cstdint>
#include <string>
#include <vector>

#include "qa/corpus/play.h"
#include "qa/util/random.h"

namespace qa {

// A speaking style: a private set of marker words and preferred
// punctuation. Styles in a pool use disjoint marker sets.
struct Style {
  std::vector<std::string> markers;
  std::string terminal;  // preferred sentence-final mark
  std::string inner;     // preferred clause separator
};

// Builds `count` styles from the function-word list; marker sets are
// disjoint and drawn deterministically from seed.
std::vector<Style> MakeStylePool(size_t count, size_t markers_per_style, uint64_t seed);

// Pseudo-word vocabulary shared by every speaker, sampled with Zipfian
// frequencies. Carries no speaker information.
class ContentLexicon {
 public:
  ContentLexicon(size_t size, uint64_t seed);
  const std::string &Sample(Rng &rng) const;
  const std::vector<std::string> &words() const { return words_; }

 private:
  std::vector<std::string> words_;
  std::vector<double> cumulative_;
};

// One sentence of words words in the given style. marker_rate is the
// probability that a word slot holds one of the style's markers and
// punctuation_rate the probability of the style's preferred marks over a
// uniformly drawn alternative.
// When topic is non-empty, content words come from it with probability
// topic_rate.
std::string StyledSentence(const Style &style, const ContentLexicon &lexicon, size_t words,
                           double marker_rate, double punctuation_rate, Rng &rng,
                           const std::vector<std::string> &topic = {},
                           double topic_rate = 0);

struct SyntheticPlayConfig {
  size_t plays = 40;
  size_t characters = 6;
  size_t scenes = 10;
  size_t min_lines = 18;  // per character and scene
  size_t max_lines = 24;
  size_t min_words = 6;   // per utterance
  size_t max_words = 14;
  size_t style_pool = 8;
  size_t markers_per_style = 18;
  double marker_rate = 0.08;
  double punctuation_rate = 0.1;
  size_t vocabulary = 4000;
  // Words shared by every speaker of a scene.
  size_t topic_words = 8;
  double topic_rate = 0.8;
};

// Drama markup for generated plays: each play has one act of
// config.scenes scenes, and each character is given a style from a shared
// pool (distinct within a play) that persists across the play's scenes.
// Character ids are play-local ("P07_C3"). Deterministic in seed.
std::vector<std::string> GenerateSyntheticPlayMarkup(const SyntheticPlayConfig &config,
                                                     uint64_t seed);

// The generated markup parsed back into plays.
std::vector<Play> GenerateSyntheticPlays(const SyntheticPlayConfig &config, uint64_t seed);

}  // namespace qa

#endif  // QA_SYNTH_PLAYS_H_
