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

#include "bait/hpo/objective.hpp"

#include <memory>
#include <vector>

#include "bait/errors.hpp"

namespace bait::hpo {
namespace {

std::size_t positive_size(const std::string& name, const ParamValue& value) {
  const auto v = as_integer(value);
  if (v <= 0) throw ParameterError("'" + name + "' must be positive");
  return static_cast<std::size_t>(v);
}

std::vector<data::SamplePair> related_only(std::span<const data::SamplePair> samples) {
  std::vector<data::SamplePair> out;
  for (const auto& s : samples) {
    if (data::is_related(s.stance)) out.push_back(s);
  }
  return out;
}

}  // namespace

void apply_hyperparameters(const Configuration& config, TuningSetup& setup) {
  using models::ModelKind;
  const ModelKind kind = setup.kind;
  for (const auto& [name, value] : config) {
    if (name == "learning_rate") {
      setup.training.learning_rate = as_double(value);
    } else if (name == "batch_size") {
      setup.training.batch_size = positive_size(name, value);
    } else if (name == "epochs") {
      setup.training.epochs = positive_size(name, value);
    } else if (name == "patience") {
      setup.training.patience = static_cast<std::size_t>(std::max<std::int64_t>(0, as_integer(value)));
    } else if (name == "dropout") {
      setup.related.dropout = setup.topk.dropout = setup.agreem.dropout = as_double(value);
    } else if (name == "hidden_a") {
      setup.related.hidden_a = setup.topk.hidden_a = setup.agreem.hidden_a = positive_size(name, value);
    } else if (name == "hidden_b") {
      setup.related.hidden_b = setup.topk.hidden_b = setup.agreem.hidden_b = positive_size(name, value);
    } else if (name == "k" && kind != ModelKind::kAgreemNet) {
      setup.related.k = setup.topk.k = positive_size(name, value);
    } else if (name == "num_heads" && kind == ModelKind::kAgreemNet) {
      setup.agreem.num_heads = positive_size(name, value);
    } else if (name == "d_k" && kind == ModelKind::kAgreemNet) {
      setup.agreem.d_k = positive_size(name, value);
    } else if (name == "d_v" && kind == ModelKind::kAgreemNet) {
      setup.agreem.d_v = positive_size(name, value);
    } else {
      throw ParameterError("'" + name + "' is not a tunable hyperparameter of " +
                           std::string(models::kind_name(kind)));
    }
  }
}

Objective model_objective(const models::FeatureBank& bank, std::span<const data::SamplePair> train,
                          std::span<const data::SamplePair> validation, TuningSetup setup) {
  const bool stage2 = setup.kind != models::ModelKind::kRelatedNet;
  auto train_set = std::make_shared<const std::vector<data::SamplePair>>(
      stage2 ? related_only(train) : std::vector<data::SamplePair>(train.begin(), train.end()));
  auto val_set = std::make_shared<const std::vector<data::SamplePair>>(
      stage2 ? related_only(validation) : std::vector<data::SamplePair>(validation.begin(), validation.end()));
  return [&bank, train_set, val_set, setup](const Configuration& config, std::uint64_t seed) {
    TuningSetup s = setup;
    apply_hyperparameters(config, s);
    switch (s.kind) {
      case models::ModelKind::kRelatedNet:
        return models::train_model<models::RelatedNet>(bank, *train_set, *val_set, s.related, s.training, seed)
            .best_validation_accuracy;
      case models::ModelKind::kTopKNet:
        return models::train_model<models::TopKNet>(bank, *train_set, *val_set, s.topk, s.training, seed)
            .best_validation_accuracy;
      case models::ModelKind::kAgreemNet:
        return models::train_model<models::AgreemNet>(bank, *train_set, *val_set, s.agreem, s.training, seed)
            .best_validation_accuracy;
    }
    throw ContractError("unknown model kind");
  };
}

TuneResult tune_model(const models::FeatureBank& bank, std::span<const data::SamplePair> train,
                      std::span<const data::SamplePair> validation, const TuningSetup& setup,
                      const SearchSpace& space, const TuneOptions& options) {
  // Reject names the setup cannot take before any trial runs.
  TuningSetup probe = setup;
  apply_hyperparameters(space.from_unit(std::vector<double>(space.size(), 0.5)), probe);
  return tune(space, model_objective(bank, train, validation, setup), options);
}

}  // namespace bait::hpo
