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
#include <sstream>

#include <boost/tokenizer.hpp>
#include <fmt/format.h>

#include "common.h"
#include "qa/util/io.h"
#include "qa/util/table.h"

namespace qa::cli {
namespace {

using CsvRow = std::vector<std::string>;

std::vector<CsvRow> ReadCsv(const fs::path &path) {
  using Tokenizer = boost::tokenizer<boost::escaped_list_separator<char>>;
  std::vector<CsvRow> rows;
  std::istringstream in(ReadFile(path));
  for (std::string line; std::getline(in, line);) {
    if (line.empty()) continue;
    Tokenizer tok(line, boost::escaped_list_separator<char>('\\', ',', '"'));
    rows.emplace_back(tok.begin(), tok.end());
  }
  if (rows.empty()) throw Error(path.string() + ": empty CSV");
  return rows;
}

// Label for an input file: the name of its directory.
std::string RunLabel(const fs::path &file) {
  const fs::path dir = fs::absolute(file).parent_path();
  return dir.filename().string();
}

struct ReportArgs {
  std::string out;
  std::vector<std::string> metrics;
  std::string baseline;
  std::string stats;
  std::vector<std::string> auc;
};

// Merges metrics.csv files and subtracts the baseline row from every other.
std::string MetricsSection(const ReportArgs &a, const fs::path &out) {
  CsvRow header;
  std::vector<CsvRow> rows;
  for (const std::string &file : a.metrics) {
    std::vector<CsvRow> csv = ReadCsv(file);
    if (header.empty()) header = csv[0];
    if (csv[0] != header) throw Error(file + ": metrics columns differ from " + a.metrics[0]);
    for (size_t r = 1; r < csv.size(); ++r) {
      CsvRow row = csv[r];
      for (const CsvRow &seen : rows) {
        if (seen[0] == row[0]) row[0] = RunLabel(file) + "/" + row[0];
      }
      rows.push_back(std::move(row));
    }
  }
  if (rows.empty()) throw Error("no metrics rows");
  size_t base = 0;
  if (!a.baseline.empty()) {
    while (base < rows.size() && rows[base][0] != a.baseline) ++base;
    if (base == rows.size()) throw Error("baseline system " + a.baseline + " not found");
  }

  TextTable merged(header), delta(header);
  for (const CsvRow &row : rows) merged.AddRow(row);
  for (size_t r = 0; r < rows.size(); ++r) {
    if (r == base) continue;
    CsvRow cells = {rows[r][0] + " - " + rows[base][0]};
    for (size_t c = 1; c < header.size(); ++c) {
      const std::string &x = rows[r][c], &y = rows[base][c];
      cells.push_back(x == "-" || y == "-" ? "-" : fmt::format("{:+.1f}", std::stod(x) - std::stod(y)));
    }
    delta.AddRow(std::move(cells));
  }
  WriteFile(out / "metrics.csv", merged.Csv());
  WriteFile(out / "delta.csv", delta.Csv());
  return "Attribution accuracy (%)\n" + merged.Render() + "\nDifferences\n" + delta.Render();
}

std::string StatsSection(const ReportArgs &a) {
  const std::vector<CsvRow> csv = ReadCsv(a.stats);
  TextTable table(csv[0]);
  for (size_t r = 1; r < csv.size(); ++r) table.AddRow(csv[r]);
  return "Corpus statistics\n" + table.Render();
}

// One line per eval-av run: its mean AUC row.
std::string AucSection(const ReportArgs &a, const fs::path &out) {
  TextTable table({"Run", "Segments", "AUC"});
  for (const std::string &file : a.auc) {
    const std::vector<CsvRow> csv = ReadCsv(file);
    const CsvRow *mean = nullptr;
    for (const CsvRow &row : csv) {
      if (!row.empty() && row[0] == "mean") mean = &row;
    }
    if (!mean || mean->size() < 2) throw Error(file + ": no mean row");
    const std::string count = csv[0].size() == 5 ? (*mean)[3] : (*mean)[1];
    table.AddRow({RunLabel(file), count, FormatFixed(std::stod(mean->back()), 2)});
  }
  WriteFile(out / "auc.csv", table.Csv());
  return "Authorship verification AUC (%)\n" + table.Render();
}

void RunReport(const CLI::App &sub, const ReportArgs &a) {
  if (a.metrics.empty() && a.stats.empty() && a.auc.empty()) {
    throw Error("report needs --metrics, --stats or --auc");
  }
  const fs::path out = a.out;
  StartRun(sub, out);
  std::vector<std::string> sections;
  if (!a.stats.empty()) sections.push_back(StatsSection(a));
  if (!a.auc.empty()) sections.push_back(AucSection(a, out));
  if (!a.metrics.empty()) sections.push_back(MetricsSection(a, out));
  std::string text;
  for (const std::string &s : sections) text += (text.empty() ? "" : "\n") + s;
  WriteFile(out / "report.txt", text);
}

}  // namespace

void RegisterReport(CLI::App &app) {
  auto a = std::make_shared<ReportArgs>();
  CLI::App *sub = app.add_subcommand("report", "Combine statistics, AUC and attribution results");
  AddOutOption(sub, &a->out);
  sub->add_option("--metrics", a->metrics, "metrics.csv files from eval-attrib");
  sub->add_option("--baseline", a->baseline, "System the differences are taken against");
  sub->add_option("--stats", a->stats, "stats.csv from build-corpus");
  sub->add_option("--auc", a->auc, "auc.csv files from eval-av");
  sub->callback([sub, a] { RunReport(*sub, *a); });
}

}  // namespace qa::cli
