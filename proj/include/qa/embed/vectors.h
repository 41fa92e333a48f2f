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

#ifndef QA_EMBED_VECTORS_H_
#define QA_EMBED_VECTORS_H_

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace qa {

// Vectors keyed by id, e.g. character or collection vectors computed by
// an external encoder.
using VectorTable = std::map<std::string, std::vector<float>>;

// Cosine similarity; 0 when either vector is all zeros. Throws Error on a
// dimension mismatch.
double Cosine(std::span<const float> a, std::span<const float> b);

// Text format: a "dim N" line, then "id v_1 ... v_N" per vector. Ids may
// not contain whitespace.
void SaveVectors(const VectorTable &vectors, const std::filesystem::path &path);
std::string FormatVectors(const VectorTable &vectors);
// Throws Error naming the line on malformed rows, a row of the wrong
// length, or a duplicate id.
VectorTable LoadVectors(const std::filesystem::path &path);
VectorTable ParseVectors(std::string_view text);

}  // namespace qa

#endif  // QA_EMBED_VECTORS_H_
