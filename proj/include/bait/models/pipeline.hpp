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

#ifndef BAIT_MODELS_PIPELINE_HPP_
#define BAIT_MODELS_PIPELINE_HPP_

#include <array>
#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "bait/data/corpus.hpp"
#include "bait/models/features.hpp"
#include "bait/models/kind.hpp"
#include "bait/models/relatednet.hpp"
#include "bait/models/stage2.hpp"

namespace bait::models {

inline constexpr double kDefaultThreshold = 0.5;

// Stage 1 gates; stage 2 refines pairs judged related.
struct BaitModel {
  RelatedNetConfig related_config;
  RelatedNetParams related;
  ModelKind stage2_kind = ModelKind::kTopKNet;
  TopKNetConfig topk_config;
  TopKNetParams topk;
  AgreemNetConfig agreem_config;
  AgreemNetParams agreem;
  double threshold = kDefaultThreshold;  // related when P(related) >= threshold

  // Loads both checkpoints; the stage-2 kind comes from its header.
  static BaitModel load(const std::filesystem::path& relatednet,
                        const std::filesystem::path& stage2, double threshold = kDefaultThreshold);
};

// The decision rule: unrelated below the threshold, otherwise the stage-2
// argmax with ties going to AGR, then DSG, then DSC.
data::Stance gate(double p_related, std::span<const double> stage2, double threshold);

// Single-sample prediction; all four views must be present.
data::Stance bait_predict(const SampleInput& sample, const BaitModel& model);

// Batched prediction over pairs resolved through `bank`.
std::vector<data::Stance> bait_predict_all(const FeatureBank& bank,
                                           std::span<const data::UnlabeledPair> pairs,
                                           const BaitModel& model);
std::vector<data::UnlabeledPair> unlabeled(std::span<const data::SamplePair> samples);

// Rows are gold, columns predicted, in the order AGR, DSG, DSC, UNR.
using ConfusionMatrix = std::array<std::array<std::size_t, data::kNumStances>, data::kNumStances>;

struct EvaluationReport {
  // Recall per gold class; NaN for a class absent from the gold labels.
  std::array<double, data::kNumStances> per_class_accuracy{};
  double overall_accuracy = 0.0;
  double fnc_score = 0.0;  // percent of the attainable maximum
  ConfusionMatrix confusion{};
};

// ContractError when lengths differ; ParameterError when empty.
ConfusionMatrix confusion_matrix(std::span<const data::Stance> predicted,
                                 std::span<const data::Stance> gold);
double fnc_score(std::span<const data::Stance> predicted, std::span<const data::Stance> gold);
EvaluationReport evaluate(std::span<const data::Stance> predicted,
                          std::span<const data::Stance> gold);

// JSON object with per_class_accuracy, overall_accuracy, fnc_score and
// confusion_matrix; absent classes are null.
std::string report_json(const EvaluationReport& report);

}  // namespace bait::models

#endif  // BAIT_MODELS_PIPELINE_HPP_
