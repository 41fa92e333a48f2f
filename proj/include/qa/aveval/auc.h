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

#ifndef QA_AVEVAL_AUC_H_
#define QA_AVEVAL_AUC_H_

#include <span>
#include <utility>
#include <vector>

namespace qa {

// Two-class AUC with a single positive: the fraction of negatives scored
// strictly below the positive, ties counting one half. Throws Error when
// negatives is empty.
double Auc(double positive, std::span<const double> negatives);

// Mann-Whitney AUC for several positives: the fraction of (positive,
// negative) pairs ordered correctly, ties counting one half.
double Auc(std::span<const double> positives, std::span<const double> negatives);

struct TTestResult {
  double t = 0;
  double p = 1;
  double mean_difference = 0;
  size_t n = 0;
  int df = 0;
  // Set when the differences have zero variance. All-zero differences give
  // t = 0 and p = 1; a constant nonzero difference gives t = +-inf, p = 0.
  bool degenerate = false;
};

// Two-sided paired t-test on (a, b) pairs, testing mean(b - a) = 0. Throws
// Error with fewer than two pairs.
TTestResult PairedTTest(const std::vector<std::pair<double, double>> &pairs);

}  // namespace qa

#endif  // QA_AVEVAL_AUC_H_
