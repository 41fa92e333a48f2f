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

#ifndef QA_TOOLS_COMMON_H_
#define QA_TOOLS_COMMON_H_

#include <filesystem>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "qa/corpus/novel.h"
#include "qa/corpus/play.h"
#include "qa/util/errors.h"

namespace qa::cli {

namespace fs = std::filesystem;

// Failures tied to input files; main prints one JSON line per entry.
class FileErrors : public Error {
 public:
  explicit FileErrors(std::vector<std::pair<std::string, std::string>> errors)
      : Error(std::to_string(errors.size()) + " input file(s) failed"), errors_(std::move(errors)) {}
  const std::vector<std::pair<std::string, std::string>> &errors() const { return errors_; }

 private:
  std::vector<std::pair<std::string, std::string>> errors_;
};

// Adds the required --out option; it is kept out of config files and the
// manifest so that reruns into another directory produce identical files.
CLI::Option *AddOutOption(CLI::App *sub, std::string *out);

// Creates the output directory and writes manifest.ini: the effective
// value of every option, loadable again with --config.
void StartRun(const CLI::App &sub, const fs::path &out);

void Log(const std::string &message);

// Sorted *.xml files of a directory.
std::vector<fs::path> ListFiles(const fs::path &dir, const std::string &extension);

// Every <stem>.txt / <stem>.json pair of a directory, sorted by stem.
std::vector<AnnotatedNovel> LoadNovelDir(const fs::path &dir);

struct Fold {
  std::vector<std::string> train;
  std::vector<std::string> test;
};

// {"folds": [{"train": [...], "test": [...]}, ...]}; every id must be known.
std::vector<Fold> LoadFolds(const fs::path &path, const std::set<std::string> &known);
std::string FoldsJson(const std::vector<Fold> &folds);

struct BuiltCorpus {
  std::vector<Play> plays;
  std::string split_mode;  // "scene" or "play"
  std::vector<std::string> train, val, test;
};

// Reads corpus.json and splits.json written by build-corpus.
BuiltCorpus LoadBuiltCorpus(const fs::path &dir);

// Registration of the subcommands.
void RegisterSynthetic(CLI::App &app);
void RegisterBuildCorpus(CLI::App &app);
void RegisterTrainEmbed(CLI::App &app);
void RegisterEvalAv(CLI::App &app);
void RegisterTrainAttrib(CLI::App &app);
void RegisterEvalAttrib(CLI::App &app);
void RegisterReport(CLI::App &app);

}  // namespace qa::cli

#endif  // QA_TOOLS_COMMON_H_
