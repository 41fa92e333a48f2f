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

#include <iostream>

#include <nlohmann/json.hpp>

#include "common.h"

int main(int argc, char **argv) {
  CLI::App app("Character representations for authorship verification and quotation attribution");
  app.set_config("--config", "", "TOML/INI file with one [subcommand] section");
  app.require_subcommand(1);
  qa::cli::RegisterSynthetic(app);
  qa::cli::RegisterBuildCorpus(app);
  qa::cli::RegisterTrainEmbed(app);
  qa::cli::RegisterEvalAv(app);
  qa::cli::RegisterTrainAttrib(app);
  qa::cli::RegisterEvalAttrib(app);
  qa::cli::RegisterReport(app);
  for (CLI::App *sub : app.get_subcommands({})) sub->fallthrough();
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    return app.exit(e);
  } catch (const qa::cli::FileErrors &e) {
    for (const auto &[file, message] : e.errors()) {
      std::cerr << nlohmann::json{{"file", file}, {"error", message}}.dump() << "\n";
    }
    return 1;
  } catch (const std::exception &e) {
    std::cerr << nlohmann::json{{"error", e.what()}}.dump() << "\n";
    return 1;
  }
  return 0;
}
