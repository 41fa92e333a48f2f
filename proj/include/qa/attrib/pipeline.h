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

#ifndef QA_ATTRIB_PIPELINE_H_
#define QA_ATTRIB_PIPELINE_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qa/attrib/context.h"
#include "qa/attrib/scorer.h"
#include "qa/corpus/novel.h"
#include "qa/embed/model.h"

namespace qa {

inline constexpr size_t kDefaultWindow = 100;

struct PreparedQuote {
  size_t quote_index = 0;
  ContextSegment segment;
  std::vector<CandidateMention> candidates;
  std::optional<std::string> gold;
  QuoteType type = QuoteType::kImplicit;
  bool unanswerable = false;  // no candidate refers to the gold speaker
  std::vector<float> quote_vector;  // u_q, filled by SetQuoteVectors
};

// A novel with contexts and candidates computed for every quote. Holds a
// pointer to the novel, which must outlive it.
struct PreparedNovel {
  const AnnotatedNovel *novel = nullptr;
  std::vector<PreparedQuote> quotes;
  CharVectors characters;  // v_c, filled for the augmented scorer
};

PreparedNovel PrepareNovel(const AnnotatedNovel &novel, size_t window = kDefaultWindow);

// u_q: each quote's text encoded on its own.
void SetQuoteVectors(const EmbeddingModel &embedder, PreparedNovel *prepared);

// Positive mask of a quote: candidates whose entity is the gold speaker.
std::vector<bool> PositiveCandidates(const PreparedQuote &quote);

ScoringInput MakeScoringInput(const PreparedNovel &novel, const PreparedQuote &quote,
                              const ScorerModel &scorer);

// Entity of the highest-scoring candidate, earliest position on ties;
// nullopt (abstain) when there are no candidates.
std::optional<std::string> AttributeQuote(const ScorerModel &scorer,
                                          const PreparedNovel &novel,
                                          const PreparedQuote &quote);

enum class CharacterSource { kGold, kPredicted };

std::string_view CharacterSourceName(CharacterSource source);
std::optional<CharacterSource> ParseCharacterSource(std::string_view name);

// v_c for every character of the novel: the embedder's encoding of the
// collection of explicit quotes attributed to c, by gold labels or by the
// context-only scorer's predictions, and zeros when c has none.
CharVectors BuildCharacterEmbeddings(const PreparedNovel &novel, const EmbeddingModel &embedder,
                                     CharacterSource source,
                                     const ScorerModel *context_scorer = nullptr);

struct AttributionRecord {
  std::string novel_id;
  std::string quote_id;
  std::optional<std::string> predicted;  // nullopt = abstain
  std::optional<std::string> gold;
  QuoteType type = QuoteType::kImplicit;
  bool unanswerable = false;
  size_t speaker_quotes = 0;  // quotes of the gold speaker in the novel

  bool Correct() const { return predicted && gold && *predicted == *gold; }
};

// Attributes every quote, in parallel across quotes. The scorer's arity
// decides whether novel.characters and quote vectors are used.
std::vector<AttributionRecord> Attribute(const ScorerModel &scorer, const PreparedNovel &novel);

struct TypeCounts {
  size_t quotes = 0;
  size_t correct = 0;
  size_t unanswerable = 0;

  std::optional<double> Accuracy() const;             // percent
  std::optional<double> UnanswerablePercent() const;  // percent
};

struct AttributionMetrics {
  TypeCounts overall, non_explicit, explicit_quotes, anaphoric, implicit;
  size_t abstained = 0;
  size_t excluded = 0;  // quotes dropped by the speaker or novel filters
};

inline constexpr size_t kMinSpeakerQuotes = 10;

// Scores quotes with a known gold speaker who utters at least min_quotes
// quotes in the novel. When max_unanswerable is set, novels whose
// unanswerable fraction among those quotes exceeds it are left out.
AttributionMetrics EvaluateAttribution(const std::vector<AttributionRecord> &records,
                                       size_t min_quotes = kMinSpeakerQuotes,
                                       std::optional<double> max_unanswerable = std::nullopt);

// Mean accuracy over folds for each system, one row per system.
struct MetricsRow {
  std::string system;
  std::vector<AttributionMetrics> folds;
};

// Columns: System, Overall, Non-Explicit, Explicit, Anaphoric, Implicit,
// Unanswerable (%). Empty categories print "-".
std::string MetricsCsv(const std::vector<MetricsRow> &rows);
std::string MetricsTable(const std::vector<MetricsRow> &rows);

// Per-column differences (second minus first) of the fold means.
std::string MetricsDeltaCsv(const MetricsRow &base, const MetricsRow &other);

// Tab-separated: quote id, predicted entity or ABSTAIN, gold, type,
// unanswerable (0/1), one line per record, with a header.
std::string PredictionsTsv(const std::vector<AttributionRecord> &records);

}  // namespace qa

#endif  // QA_ATTRIB_PIPELINE_H_
