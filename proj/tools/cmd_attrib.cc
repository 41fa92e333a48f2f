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
#include <memory>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "common.h"
#include "qa/attrib/pipeline.h"
#include "qa/attrib/trainer.h"
#include "qa/aveval/auc.h"
#include "qa/embed/model.h"
#include "qa/embed/vectors.h"
#include "qa/util/io.h"
#include "qa/util/table.h"

namespace qa::cli {
namespace {

// Where character and quote vectors come from: an embedder, or a table
// keyed "<novel>/<character>" and "<novel>/quote-<id>".
struct VectorSource {
  std::unique_ptr<EmbeddingModel> embedder;
  std::unique_ptr<VectorTable> table;

  uint32_t dim() const {
    if (embedder) return embedder->dim();
    return table->empty() ? 0 : static_cast<uint32_t>(table->begin()->second.size());
  }
};

VectorSource OpenVectorSource(const std::string &embedder, const std::string &vectors) {
  VectorSource source;
  if (!embedder.empty()) {
    source.embedder = std::make_unique<EmbeddingModel>(EmbeddingModel::Load(embedder));
  } else if (!vectors.empty()) {
    source.table = std::make_unique<VectorTable>(LoadVectors(vectors));
    if (source.table->empty()) throw Error("no vectors in " + vectors);
  }
  return source;
}

// Fills quote vectors and the characters of one novel. Missing table
// entries become zero vectors.
void SetVectors(const VectorSource &source, CharacterSource char_source,
                const ScorerModel *context_scorer, PreparedNovel *prepared) {
  if (source.embedder) {
    SetQuoteVectors(*source.embedder, prepared);
    prepared->characters =
        BuildCharacterEmbeddings(*prepared, *source.embedder, char_source, context_scorer);
    return;
  }
  const AnnotatedNovel &novel = *prepared->novel;
  const std::vector<float> zeros(source.dim(), 0.0f);
  size_t misses = 0;
  auto lookup = [&](const std::string &key) {
    auto it = source.table->find(key);
    if (it != source.table->end()) return it->second;
    ++misses;
    return zeros;
  };
  for (PreparedQuote &q : prepared->quotes) {
    q.quote_vector = lookup(novel.id + "/quote-" + novel.quotes[q.quote_index].id);
  }
  prepared->characters.clear();
  for (const Character &c : novel.characters) {
    prepared->characters[c.id] = lookup(novel.id + "/" + c.id);
  }
  if (misses > 0) Log(fmt::format("{}: {} vectors missing, using zeros", novel.id, misses));
}

std::vector<Fold> FoldsOrAll(const std::string &path, const std::vector<AnnotatedNovel> &novels,
                             bool all_train) {
  std::set<std::string> ids;
  for (const AnnotatedNovel &n : novels) ids.insert(n.id);
  if (!path.empty()) return LoadFolds(path, ids);
  Fold fold;
  (all_train ? fold.train : fold.test).assign(ids.begin(), ids.end());
  return {fold};
}

std::vector<const AnnotatedNovel *> Select(const std::vector<AnnotatedNovel> &novels,
                                           const std::vector<std::string> &ids) {
  std::vector<const AnnotatedNovel *> out;
  for (const AnnotatedNovel &n : novels) {
    if (std::find(ids.begin(), ids.end(), n.id) != ids.end()) out.push_back(&n);
  }
  return out;
}

struct TrainAttribArgs {
  std::string out;
  std::string novels;
  std::string folds;
  std::string arity = "augmented";
  std::string embedder;
  std::string vectors;
  size_t window = kDefaultWindow;
  uint32_t hidden = 512;
  uint32_t token_dim = 64;
  uint32_t vocab = 1u << 14;
  std::string mention_mode = "first-last";
  double lr = 5e-6;
  int epochs = 20;
  size_t batch = 8;
  double weight_decay = 0.01;
  uint64_t seed = 0;
};

ScorerModel TrainOne(const ScorerConfig &config, const std::vector<PreparedNovel> &train,
                     const TrainAttribArgs &a, const std::string &label) {
  ScorerModel model = ScorerModel::Random(config, a.seed);
  ScorerTrainConfig tc;
  tc.epochs = a.epochs;
  tc.learning_rate = a.lr;
  tc.batch_size = a.batch;
  tc.weight_decay = a.weight_decay;
  tc.seed = a.seed;
  const ScorerTrainResult r = TrainScorer(&model, train, tc, [&](int epoch, double loss) {
    Log(fmt::format("{} epoch {} loss {:.6f}", label, epoch + 1, loss));
  });
  Log(fmt::format("{}: {} trainable quotes, {} skipped", label, r.trainable, r.skipped));
  return model;
}

void RunTrainAttrib(const CLI::App &sub, const TrainAttribArgs &a) {
  const ScorerArity arity = *ParseScorerArity(a.arity);
  const bool augmented = arity == ScorerArity::kAugmented;
  if (augmented && a.embedder.empty() == a.vectors.empty()) {
    throw Error("the augmented scorer needs exactly one of --embedder and --vectors");
  }
  const std::vector<AnnotatedNovel> novels = LoadNovelDir(a.novels);
  const std::vector<Fold> folds = FoldsOrAll(a.folds, novels, true);
  const VectorSource source = augmented ? OpenVectorSource(a.embedder, a.vectors) : VectorSource{};
  const fs::path out = a.out;
  StartRun(sub, out);

  ScorerConfig config;
  config.mention_mode = *ParseMentionMode(a.mention_mode);
  config.vocab = a.vocab;
  config.token_dim = a.token_dim;
  config.hidden = a.hidden;
  if (augmented) config.char_dim = source.dim();
  config.Validate();

  for (size_t k = 0; k < folds.size(); ++k) {
    const fs::path dir = out / fmt::format("fold{}", k);
    fs::create_directories(dir);
    std::vector<PreparedNovel> train;
    for (const AnnotatedNovel *n : Select(novels, folds[k].train)) {
      train.push_back(PrepareNovel(*n, a.window));
      // Training always conditions on gold character vectors.
      if (augmented) SetVectors(source, CharacterSource::kGold, nullptr, &train.back());
    }
    ScorerConfig ctx_config = config;
    ctx_config.arity = ScorerArity::kContextOnly;
    TrainOne(ctx_config, train, a, fmt::format("fold {} context-only", k)).Save(dir / "context.bin");
    if (augmented) {
      ScorerConfig aug_config = config;
      aug_config.arity = ScorerArity::kAugmented;
      TrainOne(aug_config, train, a, fmt::format("fold {} augmented", k)).Save(dir / "augmented.bin");
    }
  }
  nlohmann::json info = {{"arity", a.arity},
                         {"folds", folds.size()},
                         {"window", a.window},
                         {"embedder", a.embedder},
                         {"vectors", a.vectors}};
  WriteFile(out / "attrib.json", info.dump(1) + "\n");
}

struct EvalAttribArgs {
  std::string out;
  std::string models;
  std::string novels;
  std::string folds;
  std::vector<std::string> char_sources = {"gold"};
  std::string embedder;
  std::string vectors;
  size_t min_quotes = kMinSpeakerQuotes;
  double max_unanswerable = -1;
};

struct System {
  std::string name;
  std::optional<CharacterSource> source;  // nullopt: context-only
  std::vector<AttributionMetrics> folds;
  std::vector<AttributionRecord> records;
};

// Concatenates CSV or TSV documents that share a header line.
void AppendBody(std::string *doc, const std::string &more) {
  if (doc->empty()) {
    *doc = more;
  } else {
    *doc += more.substr(more.find('\n') + 1);
  }
}

void RunEvalAttrib(const CLI::App &sub, const EvalAttribArgs &a) {
  const fs::path models = a.models;
  const nlohmann::json info = nlohmann::json::parse(ReadFile(models / "attrib.json"));
  const bool augmented = info.at("arity").get<std::string>() == "augmented";
  const size_t window = info.at("window").get<size_t>();
  const std::string embedder_path =
      !a.embedder.empty() || !a.vectors.empty() ? a.embedder : info.value("embedder", "");
  const std::string vectors_path =
      !a.embedder.empty() || !a.vectors.empty() ? a.vectors : info.value("vectors", "");

  const std::vector<AnnotatedNovel> novels = LoadNovelDir(a.novels);
  const std::vector<Fold> folds = FoldsOrAll(a.folds, novels, false);
  if (folds.size() != info.at("folds").get<size_t>()) {
    throw Error(fmt::format("{} folds given but {} were trained", folds.size(),
                            info.at("folds").get<size_t>()));
  }
  const VectorSource source =
      augmented ? OpenVectorSource(embedder_path, vectors_path) : VectorSource{};

  std::vector<System> systems;
  systems.push_back({"context-only", std::nullopt, {}, {}});
  if (augmented && source.table) {
    systems.push_back({"augmented-vectors", CharacterSource::kGold, {}, {}});
  } else if (augmented) {
    for (const std::string &name : a.char_sources) {
      const auto cs = ParseCharacterSource(name);
      if (!cs) throw Error("unknown character source " + name);
      systems.push_back({"augmented-" + name, cs, {}, {}});
    }
  }
  const std::optional<double> max_unanswerable =
      a.max_unanswerable >= 0 ? std::optional<double>(a.max_unanswerable) : std::nullopt;

  const fs::path out = a.out;
  StartRun(sub, out);
  for (size_t k = 0; k < folds.size(); ++k) {
    const fs::path dir = models / fmt::format("fold{}", k);
    const ScorerModel context = ScorerModel::Load(dir / "context.bin");
    std::unique_ptr<ScorerModel> aug;
    if (augmented) aug = std::make_unique<ScorerModel>(ScorerModel::Load(dir / "augmented.bin"));
    const std::vector<const AnnotatedNovel *> test = Select(novels, folds[k].test);
    for (System &system : systems) {
      std::vector<AttributionRecord> records;
      for (const AnnotatedNovel *n : test) {
        PreparedNovel prepared = PrepareNovel(*n, window);
        const ScorerModel *scorer = &context;
        if (system.source) {
          SetVectors(source, *system.source, &context, &prepared);
          scorer = aug.get();
        }
        std::vector<AttributionRecord> r = Attribute(*scorer, prepared);
        records.insert(records.end(), r.begin(), r.end());
      }
      system.folds.push_back(EvaluateAttribution(records, a.min_quotes, max_unanswerable));
      system.records.insert(system.records.end(), records.begin(), records.end());
    }
  }

  std::vector<MetricsRow> rows;
  for (const System &s : systems) rows.push_back({s.name, s.folds});
  WriteFile(out / "metrics.csv", MetricsCsv(rows));
  WriteFile(out / "metrics.txt", MetricsTable(rows));
  for (const System &s : systems) {
    WriteFile(out / ("predictions_" + s.name + ".tsv"), PredictionsTsv(s.records));
  }
  if (systems.size() < 2) return;
  std::string delta;
  for (size_t i = 1; i < rows.size(); ++i) AppendBody(&delta, MetricsDeltaCsv(rows[0], rows[i]));
  WriteFile(out / "delta.csv", delta);

  if (folds.size() < 2) return;
  // Fold-level paired t-tests against the context-only scorer.
  TextTable ttest({"System", "Category", "Mean Difference", "t", "df", "p"});
  using Getter = const TypeCounts AttributionMetrics::*;
  const std::pair<const char *, Getter> categories[] = {
      {"Overall", &AttributionMetrics::overall},
      {"Non-Explicit", &AttributionMetrics::non_explicit},
      {"Implicit", &AttributionMetrics::implicit}};
  for (size_t i = 1; i < systems.size(); ++i) {
    for (const auto &[name, field] : categories) {
      std::vector<std::pair<double, double>> pairs;
      for (size_t k = 0; k < folds.size(); ++k) {
        const auto base = (systems[0].folds[k].*field).Accuracy();
        const auto other = (systems[i].folds[k].*field).Accuracy();
        if (base && other) pairs.emplace_back(*base, *other);
      }
      if (pairs.size() < 2) continue;
      const TTestResult t = PairedTTest(pairs);
      ttest.AddRow({systems[i].name, name, FormatFixed(t.mean_difference, 2), FormatFixed(t.t, 3),
                    std::to_string(t.df), FormatFixed(t.p, 4)});
    }
  }
  WriteFile(out / "ttest.csv", ttest.Csv());
}

}  // namespace

void RegisterTrainAttrib(CLI::App &app) {
  auto a = std::make_shared<TrainAttribArgs>();
  CLI::App *sub = app.add_subcommand("train-attrib", "Train quotation attribution scorers");
  AddOutOption(sub, &a->out);
  sub->add_option("--novels", a->novels, "Directory of <id>.txt/<id>.json novel pairs")
      ->required();
  sub->add_option("--folds", a->folds, "Fold file; without it every novel is used for training");
  sub->add_option("--arity", a->arity, "augmented also trains the context-only scorer")
      ->check(CLI::IsMember({"context-only", "augmented"}))
      ->capture_default_str();
  sub->add_option("--embedder", a->embedder, "Embedder for character and quote vectors");
  sub->add_option("--vectors", a->vectors, "Precomputed character and quote vectors");
  sub->add_option("--window", a->window, "Tokens on each side of the quote")->capture_default_str();
  sub->add_option("--hidden", a->hidden)->capture_default_str();
  sub->add_option("--token-dim", a->token_dim)->capture_default_str();
  sub->add_option("--vocab", a->vocab, "Hashed word rows")->capture_default_str();
  sub->add_option("--mention-mode", a->mention_mode)
      ->check(CLI::IsMember({"first-last", "mean"}))
      ->capture_default_str();
  sub->add_option("--lr", a->lr)->capture_default_str();
  sub->add_option("--epochs", a->epochs)->capture_default_str();
  sub->add_option("--batch", a->batch, "Quotes per update")->capture_default_str();
  sub->add_option("--weight-decay", a->weight_decay)->capture_default_str();
  sub->add_option("--seed", a->seed)->capture_default_str();
  sub->callback([sub, a] { RunTrainAttrib(*sub, *a); });
}

void RegisterEvalAttrib(CLI::App &app) {
  auto a = std::make_shared<EvalAttribArgs>();
  CLI::App *sub = app.add_subcommand("eval-attrib", "Evaluate trained attribution scorers");
  AddOutOption(sub, &a->out);
  sub->add_option("--models", a->models, "Output directory of train-attrib")->required();
  sub->add_option("--novels", a->novels, "Directory of <id>.txt/<id>.json novel pairs")
      ->required();
  sub->add_option("--folds", a->folds, "Fold file used in training");
  sub->add_option("--char-source", a->char_sources, "gold and/or predicted")
      ->check(CLI::IsMember({"gold", "predicted"}))
      ->capture_default_str();
  sub->add_option("--embedder", a->embedder, "Override the embedder recorded at training");
  sub->add_option("--vectors", a->vectors, "Override the vectors recorded at training");
  sub->add_option("--min-quotes", a->min_quotes, "Minimum quotes of a scored speaker")
      ->capture_default_str();
  sub->add_option("--max-unanswerable", a->max_unanswerable,
                  "Drop novels above this unanswerable fraction (negative: keep all)")
      ->capture_default_str();
  sub->callback([sub, a] { RunEvalAttrib(*sub, *a); });
}

}  // namespace qa::cli
