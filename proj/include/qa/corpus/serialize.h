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

#ifndef QA_CORPUS_SERIALIZE_H_
#define QA_CORPUS_SERIALIZE_H_

#include <string>
#include <string_view>
#include <vector>

#include "qa/corpus/play.h"

namespace qa {

// Canonical corpus file: a JSON array of plays with their characters, all
// utterances and every segment. Keys are sorted, so equal corpora give
// byte-identical files.
std::string PlaysToJson(const std::vector<Play> &plays);
std::vector<Play> PlaysFromJson(std::string_view json);

}  // namespace qa

#endif  // QA_CORPUS_SERIALIZE_H_
