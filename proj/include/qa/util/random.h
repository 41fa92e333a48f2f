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

#ifndef QA_UTIL_RANDOM_H_
#define QA_UTIL_RANDOM_H_

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

namespace qa {

// 64-bit FNV-1a fingerprint of a byte string.
uint64_t Fingerprint(std::string_view text);

// SplitMix64 finalizer.
uint64_t Mix64(uint64_t x);

// Derives a seed from a sequence of values. Order matters.
uint64_t DeriveSeed(std::initializer_list<uint64_t> parts);

// Portable pseudo-random generator. The standard distributions are
// implementation-defined, so all sampling is done here on top of the
// fully specified mt19937_64 engine to keep results identical across
// standard libraries.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t Next() { return engine_(); }

  // Uniform integer in [0, n). n must be positive.
  uint64_t Uniform(uint64_t n);

  // Uniform real in [0, 1).
  double UniformReal();

  // Standard normal deviate (Marsaglia polar method).
  double Normal();

  bool Bernoulli(double p) { return UniformReal() < p; }

  template <typename T>
  void Shuffle(std::vector<T> &items) {
    for (size_t i = items.size(); i > 1; --i) {
      size_t j = Uniform(i);
      std::swap(items[i - 1], items[j]);
    }
  }

  // k distinct indices from [0, n) in sampling order.
  std::vector<size_t> Sample(size_t n, size_t k);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace qa

#endif  // QA_UTIL_RANDOM_H_
