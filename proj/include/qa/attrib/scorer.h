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

#ifndef QA_ATTRIB_SCORER_H_
#define QA_ATTRIB_SCORER_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qa/attrib/context.h"

namespace qa {

enum class ScorerArity { kContextOnly, kAugmented };
enum class MentionMode { kFirstLast, kMean };

std::string_view ScorerArityName(ScorerArity arity);  // "context-only" / "augmented"
std::optional<ScorerArity> ParseScorerArity(std::string_view name);
std::string_view MentionModeName(MentionMode mode);  // "first-last" / "mean"
std::optional<MentionMode> ParseMentionMode(std::string_view name);

struct ScorerConfig {
  ScorerArity arity = ScorerArity::kContextOnly;
  MentionMode mention_mode = MentionMode::kFirstLast;
  uint32_t vocab = 1u << 14;  // hashed word rows
  uint32_t token_dim = 64;
  uint32_t radius = 5;
  uint32_t hidden = 512;
  uint32_t char_dim = 512;  // dimension of character and quote vectors

  void Validate() const;
  uint32_t MentionDim() const {
    return mention_mode == MentionMode::kFirstLast ? 2 * token_dim : token_dim;
  }
  uint32_t InputDim() const {
    return token_dim + MentionDim() + (arity == ScorerArity::kAugmented ? 2 * char_dim : 0);
  }
};

// Candidate probabilities from scores.
std::vector<double> Softmax(const std::vector<double> &scores);

// Number of signed-distance buckets for position tags: distances 0, 1..6,
// 7-12, 13-25, 26-50 and 51+ on each side.
inline constexpr uint32_t kPositionBuckets = 21;
uint32_t PositionBucket(long distance);

// Dense parameters. Matrices are row-major.
struct ScorerParams {
  std::vector<double> embed;     // (vocab + 6) x token_dim
  std::vector<double> position;  // kPositionBuckets x token_dim
  std::vector<double> w1;        // hidden x InputDim
  std::vector<double> b1;        // hidden
  std::vector<double> w2;        // hidden
};

// Gradient of a loss. Embedding rows are sparse; the rest is dense.
struct ScorerGradient {
  std::map<uint32_t, std::vector<double>> embed;
  std::vector<double> position;
  std::vector<double> w1;
  std::vector<double> b1;
  std::vector<double> w2;
};

// Character vectors by entity id; missing entities score with zeros.
using CharVectors = std::map<std::string, std::vector<float>, std::less<>>;

// A quote prepared for scoring.
struct ScoringInput {
  const ContextSegment *segment = nullptr;
  const std::vector<CandidateMention> *candidates = nullptr;
  const CharVectors *characters = nullptr;  // augmented only
  std::span<const float> quote_vector;      // augmented only
};

class ScorerModel {
 public:
  // Embedding rows ~ N(0, 0.1^2), W1 and w2 He-scaled normals, biases and
  // position tags zero.
  static ScorerModel Random(const ScorerConfig &config, uint64_t seed);

  // Augmented model that scores exactly like `context_only`: its weights are
  // copied and the character/quote input blocks are zero.
  static ScorerModel Augment(const ScorerModel &context_only, uint32_t char_dim);

  const ScorerConfig &config() const { return config_; }
  const ScorerParams &params() const { return params_; }
  ScorerParams &mutable_params() { return params_; }
  ScorerGradient ZeroGradient() const;

  // Embedding table rows used by a segment token; specials use one row.
  std::vector<uint32_t> TokenRows(const ContextToken &token) const;
  std::vector<double> TokenEmbedding(const ContextToken &token) const;

  // H: for every position, the mean token embedding over the radius
  // neighborhood plus the tag of its signed distance to [QUOTE].
  std::vector<std::vector<double>> EncodeContext(const ContextSegment &segment) const;
  std::vector<double> ContextAt(const ContextSegment &segment, size_t pos) const;

  static std::vector<double> MentionRepr(const std::vector<std::vector<double>> &h,
                                         size_t begin, size_t end, MentionMode mode);

  // phi over the concatenated input. v and u must be empty for context-only
  // and of char_dim for augmented.
  double Score(std::span<const double> h_quote, std::span<const double> h_mention,
               std::span<const float> v_entity, std::span<const float> u_quote) const;

  std::vector<double> ScoreCandidates(const ScoringInput &input) const;

  // -log sum_{positives} softmax(scores); accumulates d loss * weight into
  // grad when given. positives[k] marks candidate k.
  double Loss(const ScoringInput &input, const std::vector<bool> &positives,
              ScorerGradient *grad, double weight = 1.0) const;

  // "QASCR1", arity, mention mode, dims, then little-endian float32 weights.
  void Save(const std::filesystem::path &path) const;
  static ScorerModel Load(const std::filesystem::path &path);
  std::string Serialize() const;
  static ScorerModel Deserialize(std::string_view bytes);

 private:
  struct Forward;
  Forward Run(const ScoringInput &input) const;

  ScorerConfig config_;
  ScorerParams params_;
};

}  // namespace qa

#endif  // QA_ATTRIB_SCORER_H_
