// Copyright 2026 The BaIT Authors. All Rights Reserved.
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
// =============================================================================

#include "bait/hpo/acquisition.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace bait::hpo {

double standard_normal_pdf(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi); }

double standard_normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double expected_improvement(double mean, double variance, double best, bool maximize) {
  const double improvement = maximize ? mean - best : best - mean;
  if (!(variance > 0.0)) return std::max(0.0, improvement);
  const double sigma = std::sqrt(variance);
  const double z = improvement / sigma;
  // The two terms can cancel to a tiny negative value deep in the left tail.
  return std::max(0.0, improvement * standard_normal_cdf(z) + sigma * standard_normal_pdf(z));
}

}  // namespace bait::hpo
