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

#include "qa/attrib/scorer.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "qa/corpus/tokenizer.h"
#include "qa/util/errors.h"
#include "qa/util/io.h"
#include "qa/util/random.h"

namespace qa {
namespace {

constexpr std::string_view kMagic = "QASCR1";

// Rows after the hashed vocabulary.
enum ExtraRow : uint32_t {
  kShapeLower = 0,
  kShapeCapital = 1,
  kShapeOther = 2,
  kShapePunct = 3,
  kQuoteRow = 4,
  kAltQuoteRow = 5,
  kExtraRows = 6,
};

double LogSumExp(const std::vector<double> &x, const std::vector<bool> *mask) {
  double m = -std::numeric_limits<double>::infinity();
  for (size_t k = 0; k < x.size(); ++k) {
    if (!mask || (*mask)[k]) m = std::max(m, x[k]);
  }
  double s = 0.0;
  for (size_t k = 0; k < x.size(); ++k) {
    if (!mask || (*mask)[k]) s += std::exp(x[k] - m);
  }
  return m + std::log(s);
}

// out += W[:, offset:offset+x.size()] * x for a row-major W with `cols`.
template <typename T>
void AddBlockProduct(const std::vector<double> &w, size_t cols, size_t offset,
                     std::span<const T> x, std::vector<double> &out) {
  for (size_t h = 0; h < out.size(); ++h) {
    const double *row = w.data() + h * cols + offset;
    double s = 0.0;
    for (size_t j = 0; j < x.size(); ++j) s += row[j] * static_cast<double>(x[j]);
    out[h] += s;
  }
}

template <typename T>
void AddOuter(std::vector<double> &w, size_t cols, size_t offset, const std::vector<double> &g,
              std::span<const T> x) {
  for (size_t h = 0; h < g.size(); ++h) {
    if (g[h] == 0.0) continue;
    double *row = w.data() + h * cols + offset;
    for (size_t j = 0; j < x.size(); ++j) row[j] += g[h] * static_cast<double>(x[j]);
  }
}

// W[:, offset:offset+n]^T g
std::vector<double> BlockTransposeProduct(const std::vector<double> &w, size_t cols,
                                          size_t offset, size_t n,
                                          const std::vector<double> &g) {
  std::vector<double> out(n, 0.0);
  for (size_t h = 0; h < g.size(); ++h) {
    if (g[h] == 0.0) continue;
    const double *row = w.data() + h * cols + offset;
    for (size_t j = 0; j < n; ++j) out[j] += g[h] * row[j];
  }
  return out;
}

void CheckVector(std::span<const float> x, size_t dim, const char *what) {
  if (x.size() != dim) {
    throw Error(std::string(what) + " has dimension " + std::to_string(x.size()) +
                ", scorer expects " + std::to_string(dim));
  }
}

}  // namespace

std::string_view ScorerArityName(ScorerArity arity) {
  return arity == ScorerArity::kAugmented ? "augmented" : "context-only";
}

std::optional<ScorerArity> ParseScorerArity(std::string_view name) {
  if (name == "context-only") return ScorerArity::kContextOnly;
  if (name == "augmented") return ScorerArity::kAugmented;
  return std::nullopt;
}

std::string_view MentionModeName(MentionMode mode) {
  return mode == MentionMode::kMean ? "mean" : "first-last";
}

std::optional<MentionMode> ParseMentionMode(std::string_view name) {
  if (name == "first-last") return MentionMode::kFirstLast;
  if (name == "mean") return MentionMode::kMean;
  return std::nullopt;
}

std::vector<double> Softmax(const std::vector<double> &scores) {
  std::vector<double> p(scores.size());
  if (scores.empty()) return p;
  const double log_z = LogSumExp(scores, nullptr);
  for (size_t k = 0; k < scores.size(); ++k) p[k] = std::exp(scores[k] - log_z);
  return p;
}

void ScorerConfig::Validate() const {
  if (vocab == 0 || token_dim == 0 || hidden == 0) {
    throw ValidationError("scorer dimensions must be positive");
  }
  if (arity == ScorerArity::kAugmented && char_dim == 0) {
    throw ValidationError("augmented scorer needs a positive character dimension");
  }
}

uint32_t PositionBucket(long distance) {
  const long a = distance < 0 ? -distance : distance;
  long v;
  if (a <= 6) {
    v = a;
  } else if (a <= 12) {
    v = 7;
  } else if (a <= 25) {
    v = 8;
  } else if (a <= 50) {
    v = 9;
  } else {
    v = 10;
  }
  return static_cast<uint32_t>(10 + (distance < 0 ? -v : v));
}

ScorerModel ScorerModel::Random(const ScorerConfig &config, uint64_t seed) {
  config.Validate();
  ScorerModel m;
  m.config_ = config;
  Rng rng(DeriveSeed({seed, Fingerprint("scorer-init")}));
  ScorerParams &p = m.params_;
  const size_t in = config.InputDim();
  p.embed.resize(size_t{config.vocab + kExtraRows} * config.token_dim);
  for (double &x : p.embed) x = 0.1 * rng.Normal();
  p.position.assign(size_t{kPositionBuckets} * config.token_dim, 0.0);
  p.w1.resize(size_t{config.hidden} * in);
  const double s1 = std::sqrt(2.0 / static_cast<double>(in));
  for (double &x : p.w1) x = s1 * rng.Normal();
  p.b1.assign(config.hidden, 0.0);
  p.w2.resize(config.hidden);
  const double s2 = std::sqrt(1.0 / static_cast<double>(config.hidden));
  for (double &x : p.w2) x = s2 * rng.Normal();
  return m;
}

ScorerModel ScorerModel::Augment(const ScorerModel &context_only, uint32_t char_dim) {
  if (context_only.config_.arity != ScorerArity::kContextOnly) {
    throw Error("Augment expects a context-only scorer");
  }
  ScorerModel m;
  m.config_ = context_only.config_;
  m.config_.arity = ScorerArity::kAugmented;
  m.config_.char_dim = char_dim;
  m.config_.Validate();
  m.params_ = context_only.params_;
  const size_t old_in = context_only.config_.InputDim();
  const size_t in = m.config_.InputDim();
  m.params_.w1.assign(size_t{m.config_.hidden} * in, 0.0);
  for (size_t h = 0; h < m.config_.hidden; ++h) {
    std::copy_n(context_only.params_.w1.begin() + h * old_in, old_in,
                m.params_.w1.begin() + h * in);
  }
  return m;
}

ScorerGradient ScorerModel::ZeroGradient() const {
  ScorerGradient g;
  g.position.assign(params_.position.size(), 0.0);
  g.w1.assign(params_.w1.size(), 0.0);
  g.b1.assign(params_.b1.size(), 0.0);
  g.w2.assign(params_.w2.size(), 0.0);
  return g;
}

std::vector<uint32_t> ScorerModel::TokenRows(const ContextToken &token) const {
  const uint32_t v = config_.vocab;
  switch (token.kind) {
    case ContextTokenKind::kQuote:
      return {v + kQuoteRow};
    case ContextTokenKind::kAltQuote:
      return {v + kAltQuoteRow};
    case ContextTokenKind::kPunct:
      return {static_cast<uint32_t>(Fingerprint(token.text) % v), v + kShapePunct};
    case ContextTokenKind::kWord:
      break;
  }
  const std::string lower = AsciiLower(token.text);
  uint32_t shape = kShapeLower;
  const unsigned char first = token.text.empty() ? 0 : token.text[0];
  if (std::isupper(first)) {
    shape = kShapeCapital;
  } else if (std::any_of(token.text.begin(), token.text.end(),
                         [](unsigned char c) { return std::isdigit(c); })) {
    shape = kShapeOther;
  }
  return {static_cast<uint32_t>(Fingerprint(lower) % v), v + shape};
}

std::vector<double> ScorerModel::TokenEmbedding(const ContextToken &token) const {
  const size_t d = config_.token_dim;
  const std::vector<uint32_t> rows = TokenRows(token);
  std::vector<double> out(d, 0.0);
  for (uint32_t r : rows) {
    for (size_t j = 0; j < d; ++j) out[j] += params_.embed[r * d + j];
  }
  for (double &x : out) x /= static_cast<double>(rows.size());
  return out;
}

std::vector<double> ScorerModel::ContextAt(const ContextSegment &segment, size_t pos) const {
  const size_t n = segment.tokens.size();
  if (pos >= n) throw Error("context position out of range");
  const size_t d = config_.token_dim;
  const size_t lo = pos > config_.radius ? pos - config_.radius : 0;
  const size_t hi = std::min(n - 1, pos + size_t{config_.radius});
  std::vector<double> out(d, 0.0);
  for (size_t k = lo; k <= hi; ++k) {
    const std::vector<double> e = TokenEmbedding(segment.tokens[k]);
    for (size_t j = 0; j < d; ++j) out[j] += e[j];
  }
  const double inv = 1.0 / static_cast<double>(hi - lo + 1);
  const uint32_t b = PositionBucket(static_cast<long>(pos) - static_cast<long>(segment.quote_pos));
  for (size_t j = 0; j < d; ++j) out[j] = out[j] * inv + params_.position[b * d + j];
  return out;
}

std::vector<std::vector<double>> ScorerModel::EncodeContext(const ContextSegment &segment) const {
  std::vector<std::vector<double>> h;
  h.reserve(segment.tokens.size());
  for (size_t i = 0; i < segment.tokens.size(); ++i) h.push_back(ContextAt(segment, i));
  return h;
}

std::vector<double> ScorerModel::MentionRepr(const std::vector<std::vector<double>> &h,
                                             size_t begin, size_t end, MentionMode mode) {
  if (begin > end || end >= h.size()) throw Error("mention span outside segment");
  if (mode == MentionMode::kFirstLast) {
    std::vector<double> out = h[begin];
    out.insert(out.end(), h[end].begin(), h[end].end());
    return out;
  }
  std::vector<double> out(h[begin].size(), 0.0);
  for (size_t i = begin; i <= end; ++i) {
    for (size_t j = 0; j < out.size(); ++j) out[j] += h[i][j];
  }
  for (double &x : out) x /= static_cast<double>(end - begin + 1);
  return out;
}

double ScorerModel::Score(std::span<const double> h_quote, std::span<const double> h_mention,
                          std::span<const float> v_entity,
                          std::span<const float> u_quote) const {
  const size_t td = config_.token_dim, md = config_.MentionDim(), in = config_.InputDim();
  if (h_quote.size() != td) throw Error("quote representation has wrong dimension");
  if (h_mention.size() != md) throw Error("mention representation has wrong dimension");
  const bool augmented = config_.arity == ScorerArity::kAugmented;
  if (augmented) {
    CheckVector(v_entity, config_.char_dim, "character vector");
    CheckVector(u_quote, config_.char_dim, "quote vector");
  } else if (!v_entity.empty() || !u_quote.empty()) {
    throw Error("context-only scorer takes no character or quote vectors");
  }
  std::vector<double> a = params_.b1;
  AddBlockProduct(params_.w1, in, 0, h_quote, a);
  if (augmented) AddBlockProduct(params_.w1, in, td + md + config_.char_dim, u_quote, a);
  AddBlockProduct(params_.w1, in, td, h_mention, a);
  if (augmented) {
    std::vector<double> e(a.size(), 0.0);
    AddBlockProduct(params_.w1, in, td + md, v_entity, e);
    for (size_t h = 0; h < a.size(); ++h) a[h] += e[h];
  }
  double s = 0.0;
  for (size_t h = 0; h < a.size(); ++h) s += params_.w2[h] * std::max(0.0, a[h]);
  return s;
}

struct ScorerModel::Forward {
  std::map<size_t, std::vector<double>> h;  // context vectors at used positions
  std::vector<std::vector<double>> mention;
  std::vector<std::vector<double>> pre;  // hidden pre-activations
  std::vector<double> scores;
  std::vector<std::span<const float>> v;  // per candidate
  std::vector<float> zeros;               // backs v for missing characters
};

ScorerModel::Forward ScorerModel::Run(const ScoringInput &input) const {
  const ContextSegment &seg = *input.segment;
  const auto &cands = *input.candidates;
  const size_t td = config_.token_dim, md = config_.MentionDim(), in = config_.InputDim();
  const bool augmented = config_.arity == ScorerArity::kAugmented;
  Forward f;
  if (augmented) {
    CheckVector(input.quote_vector, config_.char_dim, "quote vector");
    f.zeros.assign(config_.char_dim, 0.0f);
  }
  auto context = [&](size_t pos) -> const std::vector<double> & {
    auto it = f.h.find(pos);
    if (it == f.h.end()) it = f.h.emplace(pos, ContextAt(seg, pos)).first;
    return it->second;
  };
  const std::vector<double> &hq = context(seg.quote_pos);

  std::vector<double> base = params_.b1;
  AddBlockProduct(params_.w1, in, 0, std::span<const double>(hq), base);
  if (augmented) AddBlockProduct(params_.w1, in, td + md + config_.char_dim, input.quote_vector, base);

  std::map<std::string, std::vector<double>, std::less<>> entity_part;
  for (const CandidateMention &c : cands) {
    if (c.begin > c.end || c.end >= seg.tokens.size()) throw Error("candidate outside segment");
    std::vector<double> hm;
    if (config_.mention_mode == MentionMode::kFirstLast) {
      hm = context(c.begin);
      const std::vector<double> &last = context(c.end);
      hm.insert(hm.end(), last.begin(), last.end());
    } else {
      hm.assign(td, 0.0);
      for (size_t i = c.begin; i <= c.end; ++i) {
        const std::vector<double> &x = context(i);
        for (size_t j = 0; j < td; ++j) hm[j] += x[j];
      }
      for (double &x : hm) x /= static_cast<double>(c.end - c.begin + 1);
    }
    std::vector<double> a = base;
    AddBlockProduct(params_.w1, in, td, std::span<const double>(hm), a);
    std::span<const float> v;
    if (augmented) {
      v = f.zeros;
      if (input.characters) {
        auto it = input.characters->find(c.entity_id);
        if (it != input.characters->end()) {
          CheckVector(it->second, config_.char_dim, "character vector");
          v = it->second;
        }
      }
      auto [it, fresh] = entity_part.try_emplace(c.entity_id);
      if (fresh) {
        it->second.assign(a.size(), 0.0);
        AddBlockProduct(params_.w1, in, td + md, v, it->second);
      }
      for (size_t h = 0; h < a.size(); ++h) a[h] += it->second[h];
    }
    double s = 0.0;
    for (size_t h = 0; h < a.size(); ++h) s += params_.w2[h] * std::max(0.0, a[h]);
    f.scores.push_back(s);
    f.mention.push_back(std::move(hm));
    f.pre.push_back(std::move(a));
    f.v.push_back(v);
  }
  return f;
}

std::vector<double> ScorerModel::ScoreCandidates(const ScoringInput &input) const {
  return Run(input).scores;
}

double ScorerModel::Loss(const ScoringInput &input, const std::vector<bool> &positives,
                         ScorerGradient *grad, double weight) const {
  const auto &cands = *input.candidates;
  if (cands.empty()) throw Error("loss needs at least one candidate");
  if (positives.size() != cands.size()) throw Error("positive mask size mismatch");
  if (std::none_of(positives.begin(), positives.end(), [](bool b) { return b; })) {
    throw Error("loss needs a positive candidate");
  }
  Forward f = Run(input);
  const double log_z = LogSumExp(f.scores, nullptr);
  const double log_p = LogSumExp(f.scores, &positives);
  const double loss = log_z - log_p;
  if (!grad) return loss;

  const ContextSegment &seg = *input.segment;
  const size_t td = config_.token_dim, md = config_.MentionDim(), in = config_.InputDim();
  const size_t hidden = config_.hidden;
  const bool augmented = config_.arity == ScorerArity::kAugmented;

  std::vector<double> sum_da(hidden, 0.0);
  std::map<std::string, std::pair<std::span<const float>, std::vector<double>>, std::less<>>
      entity_da;
  std::map<size_t, std::vector<double>> dh;  // d loss / d H[pos]
  auto add_dh = [&](size_t pos, const double *g, double scale) {
    auto [it, fresh] = dh.try_emplace(pos);
    if (fresh) it->second.assign(td, 0.0);
    for (size_t j = 0; j < td; ++j) it->second[j] += scale * g[j];
  };

  for (size_t k = 0; k < cands.size(); ++k) {
    double ds = std::exp(f.scores[k] - log_z);
    if (positives[k]) ds -= std::exp(f.scores[k] - log_p);
    ds *= weight;
    if (ds == 0.0) continue;
    std::vector<double> da(hidden, 0.0);
    for (size_t h = 0; h < hidden; ++h) {
      if (f.pre[k][h] > 0.0) {
        grad->w2[h] += ds * f.pre[k][h];
        da[h] = ds * params_.w2[h];
      }
    }
    for (size_t h = 0; h < hidden; ++h) {
      grad->b1[h] += da[h];
      sum_da[h] += da[h];
    }
    AddOuter(grad->w1, in, td, da, std::span<const double>(f.mention[k]));
    if (augmented) {
      auto [it, fresh] = entity_da.try_emplace(cands[k].entity_id);
      if (fresh) it->second = {f.v[k], std::vector<double>(hidden, 0.0)};
      for (size_t h = 0; h < hidden; ++h) it->second.second[h] += da[h];
    }
    const std::vector<double> dm = BlockTransposeProduct(params_.w1, in, td, md, da);
    const CandidateMention &c = cands[k];
    if (config_.mention_mode == MentionMode::kFirstLast) {
      add_dh(c.begin, dm.data(), 1.0);
      add_dh(c.end, dm.data() + td, 1.0);
    } else {
      const double inv = 1.0 / static_cast<double>(c.end - c.begin + 1);
      for (size_t i = c.begin; i <= c.end; ++i) add_dh(i, dm.data(), inv);
    }
  }

  const std::vector<double> &hq = f.h.at(seg.quote_pos);
  AddOuter(grad->w1, in, 0, sum_da, std::span<const double>(hq));
  if (augmented) {
    AddOuter(grad->w1, in, td + md + config_.char_dim, sum_da, input.quote_vector);
    for (const auto &[entity, entry] : entity_da) {
      AddOuter(grad->w1, in, td + md, entry.second, entry.first);
    }
  }
  const std::vector<double> dq = BlockTransposeProduct(params_.w1, in, 0, td, sum_da);
  add_dh(seg.quote_pos, dq.data(), 1.0);

  // H[pos] = mean of neighborhood token embeddings + position tag.
  const size_t n = seg.tokens.size();
  for (const auto &[pos, g] : dh) {
    const uint32_t b = PositionBucket(static_cast<long>(pos) - static_cast<long>(seg.quote_pos));
    for (size_t j = 0; j < td; ++j) grad->position[b * td + j] += g[j];
    const size_t lo = pos > config_.radius ? pos - config_.radius : 0;
    const size_t hi = std::min(n - 1, pos + size_t{config_.radius});
    const double inv = 1.0 / static_cast<double>(hi - lo + 1);
    for (size_t k = lo; k <= hi; ++k) {
      const std::vector<uint32_t> rows = TokenRows(seg.tokens[k]);
      const double scale = inv / static_cast<double>(rows.size());
      for (uint32_t r : rows) {
        auto [it, fresh] = grad->embed.try_emplace(r);
        if (fresh) it->second.assign(td, 0.0);
        for (size_t j = 0; j < td; ++j) it->second[j] += scale * g[j];
      }
    }
  }
  return loss;
}

std::string ScorerModel::Serialize() const {
  std::ostringstream out(std::ios::binary);
  BinaryWriter w(&out);
  w.Bytes(kMagic);
  w.U8(config_.arity == ScorerArity::kAugmented ? 1 : 0);
  w.U8(config_.mention_mode == MentionMode::kMean ? 1 : 0);
  w.U32(config_.vocab);
  w.U32(config_.token_dim);
  w.U32(config_.radius);
  w.U32(config_.hidden);
  w.U32(config_.char_dim);
  for (const std::vector<double> *v :
       {&params_.embed, &params_.position, &params_.w1, &params_.b1, &params_.w2}) {
    std::vector<float> f(v->begin(), v->end());
    w.F32Array(f);
  }
  return out.str();
}

ScorerModel ScorerModel::Deserialize(std::string_view bytes) {
  std::istringstream in{std::string(bytes), std::ios::binary};
  BinaryReader r(&in, "scorer model");
  if (r.Bytes(kMagic.size()) != kMagic) throw Error("not a scorer model");
  ScorerModel m;
  const uint8_t arity = r.U8();
  const uint8_t mode = r.U8();
  if (arity > 1 || mode > 1) throw Error("corrupt scorer model header");
  m.config_.arity = arity ? ScorerArity::kAugmented : ScorerArity::kContextOnly;
  m.config_.mention_mode = mode ? MentionMode::kMean : MentionMode::kFirstLast;
  m.config_.vocab = r.U32();
  m.config_.token_dim = r.U32();
  m.config_.radius = r.U32();
  m.config_.hidden = r.U32();
  m.config_.char_dim = r.U32();
  m.config_.Validate();
  const ScorerConfig &c = m.config_;
  const std::pair<std::vector<double> *, size_t> blocks[] = {
      {&m.params_.embed, size_t{c.vocab + kExtraRows} * c.token_dim},
      {&m.params_.position, size_t{kPositionBuckets} * c.token_dim},
      {&m.params_.w1, size_t{c.hidden} * c.InputDim()},
      {&m.params_.b1, c.hidden},
      {&m.params_.w2, c.hidden}};
  for (const auto &[dst, n] : blocks) {
    std::vector<float> f(n);
    r.F32Array(f);
    for (float x : f) {
      if (!std::isfinite(x)) throw Error("scorer model has a non-finite weight");
    }
    dst->assign(f.begin(), f.end());
  }
  if (in.peek() != std::char_traits<char>::eof()) throw Error("trailing bytes in scorer model");
  return m;
}

void ScorerModel::Save(const std::filesystem::path &path) const { WriteFile(path, Serialize()); }

ScorerModel ScorerModel::Load(const std::filesystem::path &path) {
  try {
    return Deserialize(ReadFile(path));
  } catch (const Error &e) {
    throw Error(path.string() + ": " + e.what());
  }
}

}  // namespace qa
