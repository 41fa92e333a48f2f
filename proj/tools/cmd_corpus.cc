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

#include <map>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "common.h"
#include "qa/attrib/pipeline.h"
#include "qa/avdata/queryset.h"
#include "qa/avdata/split.h"
#include "qa/aveval/eval.h"
#include "qa/corpus/drama_parser.h"
#include "qa/corpus/serialize.h"
#include "qa/corpus/stats.h"
#include "qa/synth/novels.h"
#include "qa/synth/plays.h"
#include "qa/util/io.h"
#include "qa/util/table.h"

namespace qa::cli {
namespace {

struct SyntheticArgs {
  std::string out;
  uint64_t seed = 0;
  size_t plays = 40;
  size_t novels = 12;
  size_t folds = 4;
  size_t characters = 6;
};

void RunSynthetic(const CLI::App &sub, const SyntheticArgs &a) {
  const fs::path out = a.out;
  StartRun(sub, out);
  if (a.plays > 0) {
    SyntheticPlayConfig pc;
    pc.plays = a.plays;
    pc.characters = a.characters;
    fs::create_directories(out / "plays");
    const std::vector<std::string> markup = GenerateSyntheticPlayMarkup(pc, a.seed);
    for (size_t p = 0; p < markup.size(); ++p) {
      WriteFile(out / "plays" / fmt::format("P{:02d}.xml", p), markup[p]);
    }
  }
  if (a.novels > 0) {
    SyntheticNovelConfig nc;
    nc.novels = a.novels;
    nc.characters = a.characters;
    fs::create_directories(out / "novels");
    std::vector<std::string> ids;
    for (const NovelFiles &f : GenerateSyntheticNovelFiles(nc, a.seed)) {
      WriteFile(out / "novels" / (f.id + ".txt"), f.text);
      WriteFile(out / "novels" / (f.id + ".json"), f.annotation_json);
      ids.push_back(f.id);
    }
    if (a.folds >= 2 && a.folds <= ids.size()) {
      std::vector<Fold> folds(a.folds);
      for (size_t k = 0; k < a.folds; ++k) {
        for (size_t i = 0; i < ids.size(); ++i) {
          (i % a.folds == k ? folds[k].test : folds[k].train).push_back(ids[i]);
        }
      }
      WriteFile(out / "folds.json", FoldsJson(folds));
    }
  }
}

struct BuildArgs {
  std::string out;
  std::string plays;
  std::string novels;
  std::string split = "scene";
  std::vector<double> ratios = {0.8, 0.1, 0.1};
  size_t window = kDefaultWindow;
  uint64_t seed = 0;
};

std::vector<Play> ParsePlays(const fs::path &dir) {
  std::vector<Play> plays;
  std::vector<std::pair<std::string, std::string>> errors;
  for (const fs::path &file : ListFiles(dir, ".xml")) {
    try {
      plays.push_back(LoadPlay(file));
    } catch (const Error &e) {
      errors.emplace_back(file.string(), e.what());
    }
  }
  if (!errors.empty()) throw FileErrors(std::move(errors));
  if (plays.empty()) throw Error("no plays found in " + dir.string());
  std::sort(plays.begin(), plays.end(), [](const Play &a, const Play &b) { return a.id < b.id; });
  for (size_t i = 1; i < plays.size(); ++i) {
    if (plays[i].id == plays[i - 1].id) throw Error("duplicate play id " + plays[i].id);
  }
  return plays;
}

void BuildPlays(const BuildArgs &a, const fs::path &out, CorpusStats *stats) {
  std::vector<Play> parsed = ParsePlays(a.plays);
  std::vector<Play> plays;
  std::string excluded;
  for (Play &p : parsed) {
    if (a.split == "scene" && !p.scene_eligible) {
      Log("excluded " + p.id + ": no scene or act markup");
      excluded += p.id + "\tno scene or act markup\n";
      continue;
    }
    if (a.split == "play") p.segments = {p.WholePlay()};
    plays.push_back(std::move(p));
  }
  WriteFile(out / "excluded.txt", excluded);
  if (plays.empty()) throw Error("no play qualifies for the " + a.split + " split");

  std::vector<std::string> ids;
  for (const Play &p : plays) ids.push_back(p.id);
  const CorpusSplits splits = SplitCorpus(ids, {a.ratios[0], a.ratios[1], a.ratios[2]}, a.seed);
  std::map<std::string, std::string> split_of;
  for (const auto &[name, members] : {std::pair{"train", &splits.train}, std::pair{"val", &splits.val},
                                      std::pair{"test", &splits.test}}) {
    for (const std::string &id : *members) split_of[id] = name;
  }

  std::map<std::string, std::vector<SegmentSummary>> summaries;
  std::string audit;
  for (const Play &p : plays) {
    const std::string &split = split_of.at(p.id);
    for (const Segment &s : p.segments) {
      if (auto qs = BuildEvalQuerySet(s, p.id, a.seed)) {
        summaries[split].push_back(Summarize(*qs));
        audit += AuditRecords(split, *qs);
      }
      if (split == "train") audit += AuditRecords("train-instances", BuildTrainInstances(s, a.seed, 0));
    }
  }
  for (const char *split : {"train", "val", "test"}) {
    stats->rows.push_back(ComputeSplitStats(split, summaries[split]));
  }
  nlohmann::json sj = {{"split_mode", a.split}, {"seed", a.seed},
                       {"train", splits.train}, {"val", splits.val}, {"test", splits.test}};
  WriteFile(out / "corpus.json", PlaysToJson(plays));
  WriteFile(out / "splits.json", sj.dump(1) + "\n");
  WriteFile(out / "audit.jsonl", audit);
}

void BuildNovels(const BuildArgs &a, const fs::path &out, CorpusStats *stats) {
  const std::vector<AnnotatedNovel> novels = LoadNovelDir(a.novels);
  fs::create_directories(out / "novels");
  TextTable table({"Novel", "Characters", "Quotes", "Explicit", "Anaphoric", "Implicit",
                   "Speakers (>=10 quotes)", "Unanswerable (%)"});
  std::vector<SegmentSummary> explicit_summaries;
  for (const AnnotatedNovel &novel : novels) {
    WriteFile(out / "novels" / (novel.id + ".txt"), novel.text);
    WriteFile(out / "novels" / (novel.id + ".json"), NovelAnnotationJson(novel));
    std::map<QuoteType, size_t> types;
    for (const Quote &q : novel.quotes) ++types[q.type];
    size_t speakers = 0;
    for (const Character &c : novel.characters) speakers += novel.QuoteCount(c.id) >= kMinSpeakerQuotes;
    const PreparedNovel prepared = PrepareNovel(novel, a.window);
    size_t with_gold = 0, unanswerable = 0;
    for (const PreparedQuote &q : prepared.quotes) {
      with_gold += q.gold.has_value();
      unanswerable += q.unanswerable;
    }
    table.AddRow({novel.id, std::to_string(novel.characters.size()),
                  std::to_string(novel.quotes.size()), std::to_string(types[QuoteType::kExplicit]),
                  std::to_string(types[QuoteType::kAnaphoric]),
                  std::to_string(types[QuoteType::kImplicit]), std::to_string(speakers),
                  with_gold ? FormatFixed(100.0 * unanswerable / with_gold, 1) : "-"});
    try {
      for (const QuerySet &qs : NovelQuerySets(novel, false)) explicit_summaries.push_back(Summarize(qs));
    } catch (const Error &e) {
      Log("novel " + novel.id + " has no explicit-quote queries: " + e.what());
    }
  }
  WriteFile(out / "novel_stats.csv", table.Csv());
  WriteFile(out / "novel_stats.txt", table.Render());
  stats->rows.push_back(ComputeSplitStats("novels-explicit", explicit_summaries));
}

void RunBuildCorpus(const CLI::App &sub, const BuildArgs &a) {
  if (a.plays.empty() && a.novels.empty()) throw Error("build-corpus needs --plays or --novels");
  const fs::path out = a.out;
  StartRun(sub, out);
  CorpusStats stats;
  if (!a.plays.empty()) BuildPlays(a, out, &stats);
  if (!a.novels.empty()) BuildNovels(a, out, &stats);
  WriteFile(out / "stats.csv", StatsCsv(stats));
  WriteFile(out / "stats.txt", StatsTable(stats));
}

}  // namespace

void RegisterSynthetic(CLI::App &app) {
  auto a = std::make_shared<SyntheticArgs>();
  CLI::App *sub = app.add_subcommand("make-synthetic", "Generate synthetic plays, novels and folds");
  AddOutOption(sub, &a->out);
  sub->add_option("--seed", a->seed)->capture_default_str();
  sub->add_option("--plays", a->plays, "Number of plays (0 for none)")->capture_default_str();
  sub->add_option("--novels", a->novels, "Number of novels (0 for none)")->capture_default_str();
  sub->add_option("--folds", a->folds, "Cross-validation folds over novels")->capture_default_str();
  sub->add_option("--characters", a->characters, "Characters per play and novel")
      ->capture_default_str();
  sub->callback([sub, a] { RunSynthetic(*sub, *a); });
}

void RegisterBuildCorpus(CLI::App &app) {
  auto a = std::make_shared<BuildArgs>();
  CLI::App *sub = app.add_subcommand("build-corpus", "Parse plays/novels, split, and summarize");
  AddOutOption(sub, &a->out);
  sub->add_option("--plays", a->plays, "Directory of drama markup files (*.xml)");
  sub->add_option("--novels", a->novels, "Directory of <id>.txt/<id>.json novel pairs");
  sub->add_option("--split", a->split, "Segment unit")
      ->check(CLI::IsMember({"scene", "play"}))
      ->capture_default_str();
  sub->add_option("--ratios", a->ratios, "Train/val/test fractions")
      ->expected(3)
      ->capture_default_str();
  sub->add_option("--window", a->window, "Attribution window for novel statistics")
      ->capture_default_str();
  sub->add_option("--seed", a->seed)->capture_default_str();
  sub->callback([sub, a] { RunBuildCorpus(*sub, *a); });
}

}  // namespace qa::cli
