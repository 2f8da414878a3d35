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

#include "bait/augment/class_weights.hpp"

#include <numeric>
#include <string>

#include "bait/errors.hpp"

namespace bait::augment {

std::vector<double> balanced_class_weights(std::span<const std::size_t> counts) {
  if (counts.empty()) throw ParameterError("class weights need at least one class");
  for (std::size_t c = 0; c < counts.size(); ++c) {
    if (counts[c] == 0) {
      throw ParameterError("class " + std::to_string(c) + " has no samples; balanced weights are undefined");
    }
  }
  const double total = static_cast<double>(std::accumulate(counts.begin(), counts.end(), std::size_t{0}));
  const double classes = static_cast<double>(counts.size());
  std::vector<double> weights;
  weights.reserve(counts.size());
  for (std::size_t n : counts) weights.push_back(total / (classes * static_cast<double>(n)));
  return weights;
}

}  // namespace bait::augment
