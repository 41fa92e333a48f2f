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
#include <mutex>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "common.h"
#include "qa/avdata/queryset.h"
#include "qa/aveval/eval.h"
#include "qa/embed/model.h"
#include "qa/embed/trainer.h"
#include "qa/embed/vectors.h"
#include "qa/util/io.h"
#include "qa/util/table.h"

namespace qa::cli {
namespace {

struct TrainEmbedArgs {
  std::string out;
  std::string corpus;
  int epochs = 20;
  double lr = 2e-5;
  size_t batch = 0;
  size_t sample_size = kTrainSampleSize;
  double temperature = 0.1;
  double momentum = 0;
  double weight_decay = 0;
  uint32_t dim = 512;
  uint32_t hash_dim = 1u << 18;
  std::string mode = "collection";
  double init_scale = 5e-5;
  uint64_t seed = 0;
};

std::vector<Segment> SplitSegments(const BuiltCorpus &corpus, const std::vector<std::string> &ids) {
  std::vector<Segment> segments;
  for (const Play &p : corpus.plays) {
    if (std::find(ids.begin(), ids.end(), p.id) == ids.end()) continue;
    segments.insert(segments.end(), p.segments.begin(), p.segments.end());
  }
  return segments;
}

void RunTrainEmbed(const CLI::App &sub, const TrainEmbedArgs &a) {
  const BuiltCorpus corpus = LoadBuiltCorpus(a.corpus);
  const fs::path out = a.out;
  StartRun(sub, out);

  EmbedderConfig mc;
  mc.dim = a.dim;
  mc.features.hash_dim = a.hash_dim;
  mc.mode = ParsePoolingMode(a.mode);
  mc.init_scale = a.init_scale;
  mc.Validate();

  EmbedTrainConfig tc;
  tc.epochs = a.epochs;
  tc.learning_rate = a.lr;
  tc.batch_segments = a.batch > 0 ? a.batch : (corpus.split_mode == "play" ? 1 : 8);
  tc.sample_size = a.sample_size;
  tc.temperature = a.temperature;
  tc.momentum = a.momentum;
  tc.weight_decay = a.weight_decay;
  tc.seed = a.seed;

  const std::vector<Segment> segments = SplitSegments(corpus, corpus.train);
  Log(fmt::format("training on {} {} segments from {} plays", segments.size(), corpus.split_mode,
                  corpus.train.size()));
  EmbeddingModel model = EmbeddingModel::Random(mc, a.seed);
  const EmbedTrainResult result = TrainEmbedder(&model, segments, tc, [](int epoch, double loss) {
    Log(fmt::format("epoch {} loss {:.6f}", epoch + 1, loss));
  });
  model.Save(out / "embedder.bin");
  std::string csv = "epoch,loss\n";
  for (size_t e = 0; e < result.epoch_loss.size(); ++e) {
    csv += fmt::format("{},{:.6f}\n", e + 1, result.epoch_loss[e]);
  }
  WriteFile(out / "loss.csv", csv);
  nlohmann::json summary = {{"segments", segments.size()},
                            {"skipped_segments", result.skipped_segments},
                            {"steps", result.steps},
                            {"batch_segments", tc.batch_segments}};
  WriteFile(out / "train.json", summary.dump(1) + "\n");
}

struct EvalAvArgs {
  std::string out;
  std::string corpus;
  std::string novels;
  std::string protocol = "scene";
  std::string model;
  std::string vectors;
  std::string eval_split = "test";
  uint64_t seed = 0;
  bool export_vectors = false;
  bool dump_collections = false;
};

// Encodes through another encoder and keeps every vector it produced.
class RecordingEncoder : public CollectionEncoder {
 public:
  explicit RecordingEncoder(const CollectionEncoder *inner) : inner_(inner) {}
  std::vector<float> Encode(const UtteranceCollection &collection) const override {
    std::vector<float> v = inner_->Encode(collection);
    std::lock_guard<std::mutex> lock(mu_);
    table_[collection.key] = v;
    return v;
  }
  const VectorTable &table() const { return table_; }

 private:
  const CollectionEncoder *inner_;
  mutable std::mutex mu_;
  mutable VectorTable table_;
};

std::string CollectionRecords(const std::vector<QuerySet> &querysets) {
  std::string out;
  for (const QuerySet &qs : querysets) {
    for (const auto *list : {&qs.queries, &qs.targets}) {
      for (const UtteranceCollection &c : *list) {
        nlohmann::json r = {{"key", c.key},
                            {"character", c.character_id},
                            {"origin", OriginName(c.origin)},
                            {"texts", c.texts}};
        out += r.dump() + "\n";
      }
    }
  }
  return out;
}

std::vector<QuerySet> PlayQuerySets(const EvalAvArgs &a, std::map<std::string, PlayInfo> *info) {
  const BuiltCorpus corpus = LoadBuiltCorpus(a.corpus);
  if (a.protocol == "scene" && corpus.split_mode != "scene") {
    throw Error("the scene protocol needs a corpus built with --split scene");
  }
  std::vector<std::string> ids;
  if (a.eval_split == "val" || a.eval_split == "val+test") {
    ids.insert(ids.end(), corpus.val.begin(), corpus.val.end());
  }
  if (a.eval_split == "test" || a.eval_split == "val+test") {
    ids.insert(ids.end(), corpus.test.begin(), corpus.test.end());
  }
  std::vector<QuerySet> querysets;
  for (const Play &p : corpus.plays) {
    if (std::find(ids.begin(), ids.end(), p.id) == ids.end()) continue;
    (*info)[p.id] = PlayInfo{p.title, p.author};
    if (a.protocol == "play") {
      if (auto qs = BuildEvalQuerySet(p.WholePlay(), p.id, a.seed)) querysets.push_back(*qs);
      continue;
    }
    for (const Segment &s : p.segments) {
      if (auto qs = BuildEvalQuerySet(s, p.id, a.seed)) querysets.push_back(std::move(*qs));
    }
  }
  if (querysets.empty()) throw Error("no evaluable segment in split " + a.eval_split);
  return querysets;
}

void RunPlayProtocol(const EvalAvArgs &a, const CollectionEncoder &encoder, const fs::path &out) {
  std::map<std::string, PlayInfo> info;
  const std::vector<QuerySet> querysets = PlayQuerySets(a, &info);
  if (a.dump_collections) WriteFile(out / "collections.jsonl", CollectionRecords(querysets));
  const AucReport report = EvalCorpus(encoder, querysets, a.protocol, info);
  WriteFile(out / "auc.csv", AucCsv(report));
  WriteFile(out / "auc.txt", AucTable(report));
  Log(fmt::format("{} AUC {:.2f} over {} segments", a.protocol, 100 * report.mean,
                  report.segments));
}

void RunNovelProtocol(const EvalAvArgs &a, const CollectionEncoder &encoder, const fs::path &out) {
  const bool cq = a.protocol == "cq";
  const std::vector<AnnotatedNovel> novels = LoadNovelDir(a.novels);
  if (a.dump_collections) {
    std::vector<QuerySet> all;
    for (const AnnotatedNovel &n : novels) {
      for (QuerySet &qs : NovelQuerySets(n, cq)) all.push_back(std::move(qs));
    }
    WriteFile(out / "collections.jsonl", CollectionRecords(all));
  }
  TextTable table({"Novel", "Queries", "AUC"});
  TextTable csv({"Novel", "Queries", "AUC"});
  double sum = 0;
  size_t scored = 0;
  for (const AnnotatedNovel &n : novels) {
    NovelAuc r;
    try {
      r = cq ? EvalCq(n, encoder) : EvalCc(n, encoder);
    } catch (const Error &e) {
      Log("skipped novel " + n.id + ": " + e.what());
      continue;
    }
    table.AddRow({n.id, std::to_string(r.queries), FormatFixed(100 * r.auc, 2)});
    csv.AddRow({n.id, std::to_string(r.queries), FormatFixed(100 * r.auc, 4)});
    sum += r.auc;
    ++scored;
  }
  if (scored == 0) throw Error("no novel could be scored under " + a.protocol);
  table.AddRule();
  table.AddRow({"mean", "", FormatFixed(100 * sum / scored, 2)});
  csv.AddRow({"mean", "", FormatFixed(100 * sum / scored, 4)});
  WriteFile(out / "auc.csv", csv.Csv());
  WriteFile(out / "auc.txt", table.Render());
  Log(fmt::format("{} AUC {:.2f} over {} novels", a.protocol, 100 * sum / scored, scored));
}

void RunEvalAv(const CLI::App &sub, const EvalAvArgs &a) {
  const bool novel_protocol = a.protocol == "cc" || a.protocol == "cq";
  if (novel_protocol && a.novels.empty()) throw Error("--protocol " + a.protocol + " needs --novels");
  if (!novel_protocol && a.corpus.empty()) throw Error("--protocol " + a.protocol + " needs --corpus");
  if (a.model.empty() == a.vectors.empty()) throw Error("give exactly one of --model and --vectors");

  EmbeddingModel model;
  VectorTable vectors;
  std::unique_ptr<CollectionEncoder> base;
  if (!a.model.empty()) {
    model = EmbeddingModel::Load(a.model);
    base = std::make_unique<ModelEncoder>(&model);
  } else {
    vectors = LoadVectors(a.vectors);
    base = std::make_unique<VectorTableEncoder>(&vectors);
  }
  const fs::path out = a.out;
  StartRun(sub, out);
  RecordingEncoder encoder(base.get());
  if (novel_protocol) {
    RunNovelProtocol(a, encoder, out);
  } else {
    RunPlayProtocol(a, encoder, out);
  }
  if (auto *table = dynamic_cast<VectorTableEncoder *>(base.get()); table && table->misses() > 0) {
    Log(fmt::format("{} collections had no vector and encoded to zero", table->misses()));
  }
  if (a.export_vectors) SaveVectors(encoder.table(), out / "vectors.txt");
}

}  // namespace

void RegisterTrainEmbed(CLI::App &app) {
  auto a = std::make_shared<TrainEmbedArgs>();
  CLI::App *sub = app.add_subcommand("train-embed", "Train the utterance-collection embedder");
  AddOutOption(sub, &a->out);
  sub->add_option("--corpus", a->corpus, "Output directory of build-corpus")->required();
  sub->add_option("--epochs", a->epochs)->capture_default_str();
  sub->add_option("--lr", a->lr, "Learning rate")->capture_default_str();
  sub->add_option("--batch", a->batch, "Segments per step (0: 8 for scenes, 1 for plays)")
      ->capture_default_str();
  sub->add_option("--sample-size", a->sample_size, "Utterances per query and target")
      ->capture_default_str();
  sub->add_option("--temperature", a->temperature)->capture_default_str();
  sub->add_option("--momentum", a->momentum)->capture_default_str();
  sub->add_option("--weight-decay", a->weight_decay)->capture_default_str();
  sub->add_option("--dim", a->dim, "Output dimension")->capture_default_str();
  sub->add_option("--hash-dim", a->hash_dim, "Hashed feature dimension")->capture_default_str();
  sub->add_option("--mode", a->mode, "Pooling")
      ->check(CLI::IsMember({"collection", "mean-pool"}))
      ->capture_default_str();
  sub->add_option("--init-scale", a->init_scale)->capture_default_str();
  sub->add_option("--seed", a->seed)->capture_default_str();
  sub->callback([sub, a] { RunTrainEmbed(*sub, *a); });
}

void RegisterEvalAv(CLI::App &app) {
  auto a = std::make_shared<EvalAvArgs>();
  CLI::App *sub = app.add_subcommand("eval-av", "Evaluate authorship verification AUC");
  AddOutOption(sub, &a->out);
  sub->add_option("--corpus", a->corpus, "Output directory of build-corpus");
  sub->add_option("--novels", a->novels, "Novel directory for the cc and cq protocols");
  sub->add_option("--protocol", a->protocol)
      ->check(CLI::IsMember({"scene", "play", "cc", "cq"}))
      ->capture_default_str();
  sub->add_option("--model", a->model, "Embedder file from train-embed");
  sub->add_option("--vectors", a->vectors, "Precomputed vectors keyed by collection");
  sub->add_option("--eval-split", a->eval_split)
      ->check(CLI::IsMember({"test", "val", "val+test"}))
      ->capture_default_str();
  sub->add_option("--seed", a->seed, "Query/target sampling seed")->capture_default_str();
  sub->add_flag("--export-vectors", a->export_vectors, "Write every encoded collection");
  sub->add_flag("--dump-collections", a->dump_collections, "Write the collections as JSON lines");
  sub->callback([sub, a] { RunEvalAv(*sub, *a); });
}

}  // namespace qa::cli
