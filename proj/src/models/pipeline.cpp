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

#include "bait/models/pipeline.hpp"

#include <cmath>
#include <limits>

#include <json.hpp>

#include "bait/errors.hpp"
#include "bait/models/checkpoint.hpp"
#include "bait/models/trainer.hpp"

namespace bait::models {

namespace {

void check_lengths(std::span<const data::Stance> predicted, std::span<const data::Stance> gold) {
  if (predicted.size() != gold.size()) {
    throw ContractError(std::to_string(predicted.size()) + " predictions for " +
                        std::to_string(gold.size()) + " gold labels");
  }
  if (gold.empty()) throw ParameterError("evaluation over an empty set");
}

void require_views(const SampleInput& s) {
  if (s.sim_head.empty() || s.nli_head.empty() || s.sim_body.length == 0 ||
      s.nli_body.length == 0) {
    throw IntegrityError("prediction needs all four embedding views");
  }
}

}  // namespace

BaitModel BaitModel::load(const std::filesystem::path& relatednet,
                          const std::filesystem::path& stage2, double threshold) {
  BaitModel m;
  auto r = load_checkpoint<RelatedNet>(relatednet);
  m.related_config = r.config;
  m.related = std::move(r.params);
  m.stage2_kind = checkpoint_kind(stage2);
  if (m.stage2_kind == ModelKind::kTopKNet) {
    auto c = load_checkpoint<TopKNet>(stage2);
    m.topk_config = c.config;
    m.topk = std::move(c.params);
  } else if (m.stage2_kind == ModelKind::kAgreemNet) {
    auto c = load_checkpoint<AgreemNet>(stage2);
    m.agreem_config = c.config;
    m.agreem = std::move(c.params);
  } else {
    throw IntegrityError(stage2.string() + " holds a stage-1 model, not a stage-2 model");
  }
  if (m.stage2_kind == ModelKind::kTopKNet ? m.topk_config.sim_dim != m.related_config.sim_dim
                                           : m.agreem_config.sim_dim != m.related_config.sim_dim) {
    throw IntegrityError("stage-1 and stage-2 checkpoints disagree on the similarity width");
  }
  m.threshold = threshold;
  return m;
}

data::Stance gate(double p_related, std::span<const double> stage2, double threshold) {
  if (p_related < threshold) return data::Stance::kUnrelated;
  if (stage2.size() != kStage2Classes) {
    throw DimensionError("stage-2 distribution of size " + std::to_string(stage2.size()));
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < stage2.size(); ++i) {
    if (stage2[i] > stage2[best]) best = i;
  }
  return stage2_stance(best);
}

data::Stance bait_predict(const SampleInput& sample, const BaitModel& model) {
  require_views(sample);
  const double p = relatednet_probability(model.related, model.related_config, sample);
  if (p < model.threshold) return data::Stance::kUnrelated;
  const std::vector<double> dist =
      model.stage2_kind == ModelKind::kTopKNet
          ? stage2_distribution<TopKNet>(model.topk, model.topk_config, sample)
          : stage2_distribution<AgreemNet>(model.agreem, model.agreem_config, sample);
  return gate(p, dist, model.threshold);
}

std::vector<data::Stance> bait_predict_all(const FeatureBank& bank,
                                           std::span<const data::UnlabeledPair> pairs,
                                           const BaitModel& model) {
  const nn::Matrix p1 = predict_probabilities<RelatedNet>(bank, pairs, model.related,
                                                          model.related_config);
  std::vector<data::UnlabeledPair> related;
  std::vector<std::size_t> where;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (p1(i, RelatedNet::kRelatedIndex) >= model.threshold) {
      related.push_back(pairs[i]);
      where.push_back(i);
    }
  }
  std::vector<data::Stance> out(pairs.size(), data::Stance::kUnrelated);
  if (related.empty()) return out;
  const nn::Matrix p2 =
      model.stage2_kind == ModelKind::kTopKNet
          ? predict_probabilities<TopKNet>(bank, related, model.topk, model.topk_config)
          : predict_probabilities<AgreemNet>(bank, related, model.agreem, model.agreem_config);
  for (std::size_t j = 0; j < related.size(); ++j) {
    const auto row = p2.row(j);
    const std::vector<double> dist(row.begin(), row.end());
    out[where[j]] = gate(p1(where[j], RelatedNet::kRelatedIndex), dist, model.threshold);
  }
  return out;
}

std::vector<data::UnlabeledPair> unlabeled(std::span<const data::SamplePair> samples) {
  std::vector<data::UnlabeledPair> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back({s.headline_id, s.body_id});
  return out;
}

ConfusionMatrix confusion_matrix(std::span<const data::Stance> predicted,
                                 std::span<const data::Stance> gold) {
  check_lengths(predicted, gold);
  ConfusionMatrix m{};
  for (std::size_t i = 0; i < gold.size(); ++i) ++m[data::index_of(gold[i])][data::index_of(predicted[i])];
  return m;
}

double fnc_score(std::span<const data::Stance> predicted, std::span<const data::Stance> gold) {
  check_lengths(predicted, gold);
  double points = 0.0, best = 0.0;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    const bool gold_related = data::is_related(gold[i]);
    best += gold_related ? 1.0 : 0.25;
    if (gold_related == data::is_related(predicted[i])) points += 0.25;
    if (gold_related && predicted[i] == gold[i]) points += 0.75;
  }
  return 100.0 * points / best;
}

EvaluationReport evaluate(std::span<const data::Stance> predicted,
                          std::span<const data::Stance> gold) {
  EvaluationReport r;
  r.confusion = confusion_matrix(predicted, gold);
  std::size_t correct = 0;
  for (std::size_t g = 0; g < data::kNumStances; ++g) {
    std::size_t total = 0;
    for (std::size_t p = 0; p < data::kNumStances; ++p) total += r.confusion[g][p];
    correct += r.confusion[g][g];
    r.per_class_accuracy[g] = total == 0 ? std::numeric_limits<double>::quiet_NaN()
                                         : static_cast<double>(r.confusion[g][g]) /
                                               static_cast<double>(total);
  }
  r.overall_accuracy = static_cast<double>(correct) / static_cast<double>(gold.size());
  r.fnc_score = fnc_score(predicted, gold);
  return r;
}

std::string report_json(const EvaluationReport& report) {
  nlohmann::ordered_json j;
  auto& per_class = j["per_class_accuracy"] = nlohmann::ordered_json::object();
  for (std::size_t c = 0; c < data::kNumStances; ++c) {
    const double v = report.per_class_accuracy[c];
    per_class[std::string(data::stance_abbrev(data::kAllStances[c]))] =
        std::isnan(v) ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(v);
  }
  j["overall_accuracy"] = report.overall_accuracy;
  j["fnc_score"] = report.fnc_score;
  j["confusion_matrix"] = report.confusion;
  return j.dump(2) + "\n";
}

}  // namespace bait::models
