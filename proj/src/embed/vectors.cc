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

#include "qa/embed/vectors.h"

#include <charconv>
#include <cmath>
#include <sstream>

#include <fmt/format.h>

#include "qa/util/errors.h"
#include "qa/util/io.h"

namespace qa {

double Cosine(std::span<const float> a, std::span<const float> b) {
  if (a.size() != b.size()) {
    throw Error(fmt::format("cosine of vectors with dimensions {} and {}", a.size(), b.size()));
  }
  double dot = 0, na = 0, nb = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    dot += double{a[i]} * b[i];
    na += double{a[i]} * a[i];
    nb += double{b[i]} * b[i];
  }
  if (na == 0 || nb == 0) return 0;
  return std::clamp(dot / std::sqrt(na * nb), -1.0, 1.0);
}

std::string FormatVectors(const VectorTable &vectors) {
  size_t dim = vectors.empty() ? 0 : vectors.begin()->second.size();
  std::string out = fmt::format("dim {}\n", dim);
  for (const auto &[id, v] : vectors) {
    if (v.size() != dim) throw Error("vector " + id + " has the wrong dimension");
    if (id.empty() || id.find_first_of(" \t\n") != std::string::npos) {
      throw Error("vector id '" + id + "' is empty or contains whitespace");
    }
    out += id;
    for (float x : v) out += fmt::format(" {:.9g}", x);
    out += '\n';
  }
  return out;
}

void SaveVectors(const VectorTable &vectors, const std::filesystem::path &path) {
  WriteFile(path, FormatVectors(vectors));
}

VectorTable ParseVectors(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  size_t dim = 0;
  bool header = false;
  VectorTable table;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string first;
    if (!(fields >> first)) continue;
    if (!header) {
      long long n = -1;
      if (first != "dim" || !(fields >> n) || n < 0) {
        throw ParseError("expected header 'dim N'", line_no);
      }
      dim = static_cast<size_t>(n);
      header = true;
      continue;
    }
    std::vector<float> v;
    std::string token;
    while (fields >> token) {
      char *end = nullptr;
      float x = std::strtof(token.c_str(), &end);
      if (end != token.c_str() + token.size() || !std::isfinite(x)) {
        throw ParseError("bad number '" + token + "'", line_no);
      }
      v.push_back(x);
    }
    if (v.size() != dim) {
      throw ParseError(fmt::format("vector {} has {} values, header says {}", first, v.size(), dim),
                       line_no);
    }
    if (!table.emplace(first, std::move(v)).second) {
      throw ParseError("duplicate id " + first, line_no);
    }
  }
  if (!header) throw ParseError("missing header 'dim N'", line_no);
  return table;
}

VectorTable LoadVectors(const std::filesystem::path &path) {
  try {
    return ParseVectors(ReadFile(path));
  } catch (const ParseError &e) {
    throw Error(path.string() + ": " + e.what());
  }
}

}  // namespace qa
