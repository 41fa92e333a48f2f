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

#include "qa/aveval/eval.h"

#include <cmath>
#include <set>

#include <fmt/format.h>

#include "qa/aveval/auc.h"
#include "qa/util/errors.h"
#include "qa/util/io.h"
#include "qa/util/parallel.h"
#include "qa/util/table.h"

namespace qa {
namespace {

struct Scored {
  double sum = 0;
  size_t queries = 0;
};

// Scores every query that has at least one same-character target and at
// least one other target.
Scored ScoreQuerySet(const CollectionEncoder &encoder, const QuerySet &qs) {
  std::vector<std::vector<float>> targets(qs.targets.size());
  ParallelFor(targets.size(), [&](size_t k) { targets[k] = encoder.Encode(qs.targets[k]); });
  std::vector<double> aucs(qs.queries.size(), -1);
  ParallelFor(qs.queries.size(), [&](size_t k) {
    const UtteranceCollection &query = qs.queries[k];
    std::vector<float> q = encoder.Encode(query);
    std::vector<double> pos, neg;
    for (size_t t = 0; t < targets.size(); ++t) {
      double s = Cosine(q, targets[t]);
      (qs.targets[t].character_id == query.character_id ? pos : neg).push_back(s);
    }
    if (!pos.empty() && !neg.empty()) aucs[k] = Auc(pos, neg);
  });
  Scored out;
  for (double a : aucs) {
    if (a < 0) continue;
    out.sum += a;
    ++out.queries;
  }
  return out;
}

UtteranceCollection Collection(std::string key, const std::string &character, Origin origin,
                               const AnnotatedNovel &novel, const std::vector<size_t> &quotes) {
  UtteranceCollection c;
  c.key = std::move(key);
  c.character_id = character;
  c.origin = origin;
  c.ordinals = quotes;
  for (size_t q : quotes) c.texts.emplace_back(novel.QuoteText(novel.quotes[q]));
  return c;
}

NovelAuc EvalNovel(const AnnotatedNovel &novel, const CollectionEncoder &encoder, bool single) {
  std::vector<QuerySet> sets = NovelQuerySets(novel, single);
  NovelAuc out;
  double sum = 0;
  for (const QuerySet &qs : sets) {
    Scored s = ScoreQuerySet(encoder, qs);
    sum += s.sum;
    out.queries += s.queries;
  }
  if (out.queries == 0) throw Error("novel " + novel.id + ": no query could be scored");
  out.auc = sum / static_cast<double>(out.queries);
  return out;
}

}  // namespace

std::vector<float> ModelEncoder::Encode(const UtteranceCollection &collection) const {
  return model_->Encode(collection.texts);
}

VectorTableEncoder::VectorTableEncoder(const VectorTable *table) : table_(table) {
  if (!table_->empty()) dim_ = table_->begin()->second.size();
}

std::vector<float> VectorTableEncoder::Encode(const UtteranceCollection &collection) const {
  auto it = table_->find(collection.key);
  if (it == table_->end()) {
    ++misses_;
    return std::vector<float>(dim_, 0.0f);
  }
  return it->second;
}

double EvalSegment(const CollectionEncoder &encoder, const QuerySet &queryset) {
  Scored s = ScoreQuerySet(encoder, queryset);
  if (s.queries == 0) throw Error("segment " + queryset.segment_id + " has no scorable query");
  return s.sum / static_cast<double>(s.queries);
}

AucReport EvalCorpus(const CollectionEncoder &encoder, const std::vector<QuerySet> &querysets,
                     const std::string &protocol,
                     const std::map<std::string, PlayInfo> &play_info) {
  AucReport report;
  report.protocol = protocol;
  std::map<std::string, std::vector<double>> by_play;
  double total = 0;
  for (const QuerySet &qs : querysets) {
    double auc = EvalSegment(encoder, qs);
    by_play[qs.play_id].push_back(auc);
    total += auc;
    ++report.segments;
  }
  if (report.segments == 0) return report;
  report.segment_mean = total / static_cast<double>(report.segments);
  for (const auto &[play, aucs] : by_play) {
    PlayAuc row;
    row.play_id = play;
    if (auto it = play_info.find(play); it != play_info.end()) {
      row.title = it->second.title;
      row.author = it->second.author;
    }
    row.segments = aucs.size();
    for (double a : aucs) row.auc += a;
    row.auc /= static_cast<double>(aucs.size());
    report.plays.push_back(row);
  }
  for (const PlayAuc &p : report.plays) report.mean += p.auc;
  report.mean /= static_cast<double>(report.plays.size());
  double var = 0;
  for (const PlayAuc &p : report.plays) var += (p.auc - report.mean) * (p.auc - report.mean);
  report.std = std::sqrt(var / static_cast<double>(report.plays.size()));
  return report;
}

std::string AucTable(const AucReport &report) {
  TextTable table({"Play", "Author", "Segments", "AUC"});
  for (const PlayAuc &p : report.plays) {
    table.AddRow({p.title.empty() ? p.play_id : p.title, p.author, std::to_string(p.segments),
                  FormatFixed(100 * p.auc, 1)});
  }
  table.AddRule();
  table.AddRow({"Mean (" + report.protocol + ")", "", std::to_string(report.segments),
                FormatFixed(100 * report.mean, 1) + " (" + FormatFixed(100 * report.std, 1) +
                    ")"});
  return table.Render();
}

std::string AucCsv(const AucReport &report) {
  TextTable table({"Play", "Title", "Author", "Segments", "AUC"});
  for (const PlayAuc &p : report.plays) {
    table.AddRow({p.play_id, p.title, p.author, std::to_string(p.segments),
                  FormatFixed(100 * p.auc, 4)});
  }
  table.AddRow({"mean", "", "", std::to_string(report.segments),
                FormatFixed(100 * report.mean, 4)});
  table.AddRow({"std", "", "", "", FormatFixed(100 * report.std, 4)});
  return table.Csv();
}

std::vector<QuerySet> NovelQuerySets(const AnnotatedNovel &novel, bool single_quote_targets) {
  if (novel.chapters.size() < 2) {
    throw Error("novel " + novel.id + ": the novel protocols need at least two chapters");
  }
  // quotes[chapter][character] -> quote indices; explicit ones separately.
  std::vector<std::map<std::string, std::vector<size_t>>> all(novel.chapters.size());
  std::vector<std::map<std::string, std::vector<size_t>>> explicit_quotes(novel.chapters.size());
  std::set<std::string> explicit_speakers;
  for (size_t k = 0; k < novel.quotes.size(); ++k) {
    const Quote &q = novel.quotes[k];
    if (!q.speaker_id) continue;
    all[q.chapter][*q.speaker_id].push_back(k);
    if (q.type == QuoteType::kExplicit) {
      explicit_quotes[q.chapter][*q.speaker_id].push_back(k);
      explicit_speakers.insert(*q.speaker_id);
    }
  }
  if (explicit_speakers.size() < 2) {
    throw Error("novel " + novel.id +
                ": the novel protocols need two characters with explicit quotes");
  }

  std::vector<QuerySet> sets;
  for (size_t ch = 0; ch < novel.chapters.size(); ++ch) {
    if (explicit_quotes[ch].empty()) continue;
    QuerySet qs;
    qs.play_id = novel.id;
    qs.segment_id = fmt::format("{}/chapter-{}", novel.id, ch);
    std::map<std::string, std::vector<size_t>> held_out;
    for (size_t other = 0; other < novel.chapters.size(); ++other) {
      if (other == ch) continue;
      for (const auto &[c, qs_] : all[other]) {
        auto &dst = held_out[c];
        dst.insert(dst.end(), qs_.begin(), qs_.end());
      }
    }
    for (auto &[c, quotes] : held_out) {
      std::sort(quotes.begin(), quotes.end());
      if (single_quote_targets) {
        for (size_t q : quotes) {
          qs.targets.push_back(Collection(novel.id + "/quote-" + novel.quotes[q].id, c,
                                          Origin::kTarget, novel, {q}));
        }
      } else {
        qs.targets.push_back(
            Collection(qs.segment_id + "|" + c + "|target", c, Origin::kTarget, novel, quotes));
      }
    }
    for (const auto &[c, quotes] : explicit_quotes[ch]) {
      qs.queries.push_back(
          Collection(qs.segment_id + "|" + c + "|query", c, Origin::kQuery, novel, quotes));
    }
    qs.num_utterances = 0;
    for (const auto &[c, quotes] : all[ch]) qs.num_utterances += quotes.size();
    sets.push_back(std::move(qs));
  }
  return sets;
}

NovelAuc EvalCc(const AnnotatedNovel &novel, const CollectionEncoder &encoder) {
  return EvalNovel(novel, encoder, false);
}

NovelAuc EvalCq(const AnnotatedNovel &novel, const CollectionEncoder &encoder) {
  return EvalNovel(novel, encoder, true);
}

}  // namespace qa
