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

#include "qa/attrib/pipeline.h"

#include <cmath>
#include <map>

#include <fmt/format.h>

#include "qa/corpus/lexicon.h"
#include "qa/util/errors.h"
#include "qa/util/io.h"
#include "qa/util/parallel.h"
#include "qa/util/table.h"

namespace qa {

PreparedNovel PrepareNovel(const AnnotatedNovel &novel, size_t window) {
  const CharacterLexicon lexicon(novel.characters);
  PreparedNovel out;
  out.novel = &novel;
  out.quotes.resize(novel.quotes.size());
  for (size_t i = 0; i < novel.quotes.size(); ++i) {
    PreparedQuote &q = out.quotes[i];
    q.quote_index = i;
    q.segment = BuildContext(novel, i, window);
    q.candidates = EnumerateCandidates(q.segment, novel, lexicon);
    q.gold = novel.quotes[i].speaker_id;
    q.type = novel.quotes[i].type;
    q.unanswerable = q.gold && IsUnanswerable(*q.gold, q.candidates);
  }
  return out;
}

void SetQuoteVectors(const EmbeddingModel &embedder, PreparedNovel *prepared) {
  const AnnotatedNovel &novel = *prepared->novel;
  ParallelFor(prepared->quotes.size(), [&](size_t i) {
    PreparedQuote &q = prepared->quotes[i];
    q.quote_vector = embedder.Encode({std::string(novel.QuoteText(novel.quotes[q.quote_index]))});
  });
}

std::vector<bool> PositiveCandidates(const PreparedQuote &quote) {
  std::vector<bool> out(quote.candidates.size(), false);
  if (!quote.gold) return out;
  for (size_t k = 0; k < out.size(); ++k) out[k] = quote.candidates[k].entity_id == *quote.gold;
  return out;
}

ScoringInput MakeScoringInput(const PreparedNovel &novel, const PreparedQuote &quote,
                              const ScorerModel &scorer) {
  ScoringInput in;
  in.segment = &quote.segment;
  in.candidates = &quote.candidates;
  if (scorer.config().arity == ScorerArity::kAugmented) {
    if (quote.quote_vector.empty()) throw Error("augmented scorer needs quote vectors");
    in.characters = &novel.characters;
    in.quote_vector = quote.quote_vector;
  }
  return in;
}

std::optional<std::string> AttributeQuote(const ScorerModel &scorer, const PreparedNovel &novel,
                                          const PreparedQuote &quote) {
  if (quote.candidates.empty()) return std::nullopt;
  const std::vector<double> scores =
      scorer.ScoreCandidates(MakeScoringInput(novel, quote, scorer));
  size_t best = 0;
  for (size_t k = 1; k < scores.size(); ++k) {
    if (scores[k] > scores[best]) best = k;  // candidates are in position order
  }
  return quote.candidates[best].entity_id;
}

std::string_view CharacterSourceName(CharacterSource source) {
  return source == CharacterSource::kPredicted ? "predicted" : "gold";
}

std::optional<CharacterSource> ParseCharacterSource(std::string_view name) {
  if (name == "gold") return CharacterSource::kGold;
  if (name == "predicted") return CharacterSource::kPredicted;
  return std::nullopt;
}

CharVectors BuildCharacterEmbeddings(const PreparedNovel &novel, const EmbeddingModel &embedder,
                                     CharacterSource source, const ScorerModel *context_scorer) {
  const AnnotatedNovel &doc = *novel.novel;
  std::vector<std::optional<std::string>> speaker(novel.quotes.size());
  if (source == CharacterSource::kPredicted) {
    if (!context_scorer || context_scorer->config().arity != ScorerArity::kContextOnly) {
      throw Error("predicted character embeddings need a context-only scorer");
    }
    ParallelFor(novel.quotes.size(), [&](size_t i) {
      const PreparedQuote &q = novel.quotes[i];
      if (q.type == QuoteType::kExplicit) speaker[i] = AttributeQuote(*context_scorer, novel, q);
    });
  } else {
    for (size_t i = 0; i < novel.quotes.size(); ++i) {
      if (novel.quotes[i].type == QuoteType::kExplicit) speaker[i] = novel.quotes[i].gold;
    }
  }
  std::map<std::string, std::vector<std::string>> collections;
  for (size_t i = 0; i < novel.quotes.size(); ++i) {
    if (!speaker[i]) continue;
    const Quote &quote = doc.quotes[novel.quotes[i].quote_index];
    collections[*speaker[i]].emplace_back(doc.QuoteText(quote));
  }
  CharVectors out;
  for (const Character &c : doc.characters) {
    auto it = collections.find(c.id);
    out[c.id] = it == collections.end() ? std::vector<float>(embedder.dim(), 0.0f)
                                        : embedder.Encode(it->second);
  }
  return out;
}

std::vector<AttributionRecord> Attribute(const ScorerModel &scorer, const PreparedNovel &novel) {
  const AnnotatedNovel &doc = *novel.novel;
  std::map<std::string, size_t, std::less<>> counts;
  for (const Quote &q : doc.quotes) {
    if (q.speaker_id) ++counts[*q.speaker_id];
  }
  std::vector<AttributionRecord> out(novel.quotes.size());
  ParallelFor(novel.quotes.size(), [&](size_t i) {
    const PreparedQuote &q = novel.quotes[i];
    AttributionRecord &r = out[i];
    r.novel_id = doc.id;
    r.quote_id = doc.quotes[q.quote_index].id;
    r.predicted = AttributeQuote(scorer, novel, q);
    r.gold = q.gold;
    r.type = q.type;
    r.unanswerable = q.unanswerable;
    if (q.gold) r.speaker_quotes = counts.find(*q.gold)->second;
  });
  return out;
}

std::optional<double> TypeCounts::Accuracy() const {
  if (quotes == 0) return std::nullopt;
  return 100.0 * static_cast<double>(correct) / static_cast<double>(quotes);
}

std::optional<double> TypeCounts::UnanswerablePercent() const {
  if (quotes == 0) return std::nullopt;
  return 100.0 * static_cast<double>(unanswerable) / static_cast<double>(quotes);
}

AttributionMetrics EvaluateAttribution(const std::vector<AttributionRecord> &records,
                                       size_t min_quotes, std::optional<double> max_unanswerable) {
  auto eligible = [&](const AttributionRecord &r) {
    return r.gold && r.speaker_quotes >= min_quotes;
  };
  std::map<std::string, std::pair<size_t, size_t>> per_novel;  // unanswerable, total
  for (const AttributionRecord &r : records) {
    if (!eligible(r)) continue;
    auto &[u, n] = per_novel[r.novel_id];
    u += r.unanswerable;
    ++n;
  }
  AttributionMetrics m;
  for (const AttributionRecord &r : records) {
    if (!eligible(r)) {
      ++m.excluded;
      continue;
    }
    if (max_unanswerable) {
      const auto &[u, n] = per_novel[r.novel_id];
      if (static_cast<double>(u) / static_cast<double>(n) > *max_unanswerable) {
        ++m.excluded;
        continue;
      }
    }
    const bool correct = r.Correct();
    auto add = [&](TypeCounts &t) {
      ++t.quotes;
      t.correct += correct;
      t.unanswerable += r.unanswerable;
    };
    add(m.overall);
    switch (r.type) {
      case QuoteType::kExplicit:
        add(m.explicit_quotes);
        break;
      case QuoteType::kAnaphoric:
        add(m.anaphoric);
        add(m.non_explicit);
        break;
      case QuoteType::kImplicit:
        add(m.implicit);
        add(m.non_explicit);
        break;
    }
    m.abstained += !r.predicted;
  }
  return m;
}

namespace {

// Mean over the folds where the value is defined.
std::optional<double> FoldMean(const std::vector<AttributionMetrics> &folds,
                               std::optional<double> (*get)(const AttributionMetrics &)) {
  double sum = 0.0;
  size_t n = 0;
  for (const AttributionMetrics &m : folds) {
    if (auto v = get(m)) {
      sum += *v;
      ++n;
    }
  }
  if (n == 0) return std::nullopt;
  return sum / static_cast<double>(n);
}

using Getter = std::optional<double> (*)(const AttributionMetrics &);
const Getter kColumns[] = {
    [](const AttributionMetrics &m) { return m.overall.Accuracy(); },
    [](const AttributionMetrics &m) { return m.non_explicit.Accuracy(); },
    [](const AttributionMetrics &m) { return m.explicit_quotes.Accuracy(); },
    [](const AttributionMetrics &m) { return m.anaphoric.Accuracy(); },
    [](const AttributionMetrics &m) { return m.implicit.Accuracy(); },
    [](const AttributionMetrics &m) { return m.overall.UnanswerablePercent(); },
};

std::vector<std::string> Header() {
  return {"System", "Overall", "Non-Explicit", "Explicit", "Anaphoric", "Implicit",
          "Unanswerable (%)"};
}

std::string Cell(std::optional<double> v) { return v ? FormatFixed(*v, 1) : "-"; }

TextTable BuildTable(const std::vector<MetricsRow> &rows) {
  TextTable table(Header());
  for (const MetricsRow &row : rows) {
    std::vector<std::string> cells = {row.system};
    for (Getter g : kColumns) cells.push_back(Cell(FoldMean(row.folds, g)));
    table.AddRow(std::move(cells));
  }
  return table;
}

}  // namespace

std::string MetricsCsv(const std::vector<MetricsRow> &rows) { return BuildTable(rows).Csv(); }

std::string MetricsTable(const std::vector<MetricsRow> &rows) {
  return BuildTable(rows).Render();
}

std::string MetricsDeltaCsv(const MetricsRow &base, const MetricsRow &other) {
  TextTable table(Header());
  std::vector<std::string> cells = {other.system + " - " + base.system};
  for (Getter g : kColumns) {
    const auto a = FoldMean(base.folds, g), b = FoldMean(other.folds, g);
    cells.push_back(a && b ? fmt::format("{:+.1f}", *b - *a) : "-");
  }
  table.AddRow(std::move(cells));
  return table.Csv();
}

std::string PredictionsTsv(const std::vector<AttributionRecord> &records) {
  std::string out = "novel\tquote\tpredicted\tgold\ttype\tunanswerable\n";
  for (const AttributionRecord &r : records) {
    out += fmt::format("{}\t{}\t{}\t{}\t{}\t{}\n", r.novel_id, r.quote_id,
                       r.predicted.value_or("ABSTAIN"), r.gold.value_or("-"),
                       QuoteTypeName(r.type), r.unanswerable ? 1 : 0);
  }
  return out;
}

}  // namespace qa
