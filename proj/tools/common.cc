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

#include "common.h"

#include <iostream>
#include <map>

#include <nlohmann/json.hpp>

#include "qa/corpus/serialize.h"
#include "qa/util/io.h"

namespace qa::cli {

using nlohmann::json;

CLI::Option *AddOutOption(CLI::App *sub, std::string *out) {
  return sub->add_option("--out", *out, "Output directory")->required()->configurable(false);
}

void StartRun(const CLI::App &sub, const fs::path &out) {
  fs::create_directories(out);
  WriteFile(out / "manifest.ini",
            "[" + sub.get_name() + "]\n" + sub.config_to_str(true, false));
}

void Log(const std::string &message) { std::cerr << message << "\n"; }

std::vector<fs::path> ListFiles(const fs::path &dir, const std::string &extension) {
  if (!fs::is_directory(dir)) throw Error("not a directory: " + dir.string());
  std::vector<fs::path> out;
  for (const auto &entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == extension) out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<AnnotatedNovel> LoadNovelDir(const fs::path &dir) {
  std::vector<AnnotatedNovel> novels;
  std::vector<std::pair<std::string, std::string>> errors;
  for (const fs::path &annotation : ListFiles(dir, ".json")) {
    fs::path text = annotation;
    text.replace_extension(".txt");
    if (!fs::exists(text)) {
      errors.emplace_back(annotation.string(), "missing text file " + text.filename().string());
      continue;
    }
    try {
      novels.push_back(LoadNovel(text, annotation));
    } catch (const Error &e) {
      errors.emplace_back(annotation.string(), e.what());
    }
  }
  if (!errors.empty()) throw FileErrors(std::move(errors));
  if (novels.empty()) throw Error("no novels found in " + dir.string());
  return novels;
}

std::vector<Fold> LoadFolds(const fs::path &path, const std::set<std::string> &known) {
  std::vector<Fold> folds;
  try {
    const json doc = json::parse(ReadFile(path));
    for (const json &f : doc.at("folds")) {
      folds.push_back({f.at("train").get<std::vector<std::string>>(),
                       f.at("test").get<std::vector<std::string>>()});
    }
  } catch (const json::exception &e) {
    throw Error(path.string() + ": malformed folds file: " + e.what());
  }
  for (size_t k = 0; k < folds.size(); ++k) {
    for (const auto *ids : {&folds[k].train, &folds[k].test}) {
      for (const std::string &id : *ids) {
        if (!known.count(id)) {
          throw Error(path.string() + ": fold " + std::to_string(k) + " references unknown novel " + id);
        }
      }
    }
  }
  if (folds.empty()) throw Error(path.string() + ": no folds");
  return folds;
}

std::string FoldsJson(const std::vector<Fold> &folds) {
  json out = {{"folds", json::array()}};
  for (const Fold &f : folds) out["folds"].push_back({{"train", f.train}, {"test", f.test}});
  return out.dump(1) + "\n";
}

BuiltCorpus LoadBuiltCorpus(const fs::path &dir) {
  BuiltCorpus c;
  c.plays = PlaysFromJson(ReadFile(dir / "corpus.json"));
  try {
    const json s = json::parse(ReadFile(dir / "splits.json"));
    c.split_mode = s.at("split_mode").get<std::string>();
    c.train = s.at("train").get<std::vector<std::string>>();
    c.val = s.at("val").get<std::vector<std::string>>();
    c.test = s.at("test").get<std::vector<std::string>>();
  } catch (const json::exception &e) {
    throw Error((dir / "splits.json").string() + ": " + e.what());
  }
  return c;
}

}  // namespace qa::cli
