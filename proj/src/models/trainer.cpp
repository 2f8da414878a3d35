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

#include "bait/models/trainer.hpp"

namespace bait::models {

void TrainingConfig::validate() const {
  if (!(learning_rate > 0.0)) throw ParameterError("learning rate must be positive");
  if (batch_size == 0) throw ParameterError("batch size must be at least 1");
  if (epochs == 0) throw ParameterError("epochs must be at least 1");
  for (double w : class_weights) {
    if (!(w >= 0.0)) throw ParameterError("class weights must be nonnegative");
  }
}

std::size_t argmax(std::span<const float> values) {
  if (values.empty()) throw ParameterError("argmax of an empty vector");
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[best]) best = i;
  }
  return best;
}

double unweighted_average_accuracy(std::span<const std::size_t> gold,
                                   std::span<const std::size_t> predicted, std::size_t classes) {
  if (gold.empty()) throw ParameterError("accuracy over an empty set");
  if (gold.size() != predicted.size()) {
    throw ParameterError("accuracy over " + std::to_string(gold.size()) + " labels and " +
                         std::to_string(predicted.size()) + " predictions");
  }
  std::vector<std::size_t> total(classes, 0), hit(classes, 0);
  for (std::size_t i = 0; i < gold.size(); ++i) {
    if (gold[i] >= classes) throw IndexError("label " + std::to_string(gold[i]) + " out of range");
    ++total[gold[i]];
    hit[gold[i]] += gold[i] == predicted[i] ? 1 : 0;
  }
  double sum = 0.0;
  std::size_t present = 0;
  for (std::size_t c = 0; c < classes; ++c) {
    if (total[c] == 0) continue;
    sum += static_cast<double>(hit[c]) / static_cast<double>(total[c]);
    ++present;
  }
  return sum / static_cast<double>(present);
}

std::vector<double> resolve_class_weights(const TrainingConfig& training,
                                          std::span<const std::size_t> labels,
                                          std::size_t classes) {
  if (!training.class_weights.empty()) {
    if (training.class_weights.size() != classes) {
      throw ParameterError(std::to_string(training.class_weights.size()) +
                           " class weights for a " + std::to_string(classes) + "-class model");
    }
    return training.class_weights;
  }
  if (!training.weighted_loss) return std::vector<double>(classes, 1.0);
  std::vector<std::size_t> counts(classes, 0);
  for (std::size_t l : labels) ++counts.at(l);
  return augment::balanced_class_weights(counts);
}

}  // namespace bait::models
