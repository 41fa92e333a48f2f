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

#include "qa/aveval/auc.h"

#include <cmath>
#include <limits>

#include <boost/math/distributions/students_t.hpp>

#include "qa/util/errors.h"

namespace qa {

double Auc(double positive, std::span<const double> negatives) {
  return Auc(std::span<const double>(&positive, 1), negatives);
}

double Auc(std::span<const double> positives, std::span<const double> negatives) {
  if (negatives.empty()) throw Error("AUC is undefined without negatives");
  if (positives.empty()) throw Error("AUC is undefined without positives");
  // Counted in half-units and divided once, so the result is exact.
  size_t half_wins = 0;
  for (double p : positives) {
    for (double n : negatives) {
      if (n < p) {
        half_wins += 2;
      } else if (n == p) {
        half_wins += 1;
      }
    }
  }
  return static_cast<double>(half_wins) /
         (2.0 * static_cast<double>(positives.size() * negatives.size()));
}

TTestResult PairedTTest(const std::vector<std::pair<double, double>> &pairs) {
  if (pairs.size() < 2) throw Error("paired t-test needs at least two pairs");
  TTestResult r;
  r.n = pairs.size();
  r.df = static_cast<int>(r.n) - 1;
  double mean = 0;
  for (const auto &[a, b] : pairs) mean += b - a;
  mean /= static_cast<double>(r.n);
  double ss = 0;
  for (const auto &[a, b] : pairs) ss += (b - a - mean) * (b - a - mean);
  r.mean_difference = mean;
  const double sd = std::sqrt(ss / r.df);
  // Differences equal up to rounding count as constant.
  double scale = 0;
  for (const auto &[a, b] : pairs) scale = std::max(scale, std::abs(b - a));
  if (sd <= 1e-12 * std::max(scale, 1e-300) || sd == 0) {
    r.degenerate = true;
    if (scale == 0) {
      r.t = 0;
      r.p = 1;
    } else {
      r.t = std::copysign(std::numeric_limits<double>::infinity(), mean);
      r.p = 0;
    }
    return r;
  }
  r.t = mean / (sd / std::sqrt(static_cast<double>(r.n)));
  boost::math::students_t dist(r.df);
  r.p = 2 * boost::math::cdf(boost::math::complement(dist, std::abs(r.t)));
  return r;
}

}  // namespace qa
