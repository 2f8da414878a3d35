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

#ifndef BAIT_HPO_OBJECTIVE_HPP_
#define BAIT_HPO_OBJECTIVE_HPP_

#include <span>

#include "bait/data/corpus.hpp"
#include "bait/hpo/search_space.hpp"
#include "bait/hpo/tuner.hpp"
#include "bait/models/features.hpp"
#include "bait/models/kind.hpp"
#include "bait/models/relatednet.hpp"
#include "bait/models/stage2.hpp"
#include "bait/models/trainer.hpp"

namespace bait::hpo {

// Everything a trial needs besides the tuned values.
struct TuningSetup {
  models::ModelKind kind = models::ModelKind::kRelatedNet;
  models::RelatedNetConfig related;
  models::TopKNetConfig topk;
  models::AgreemNetConfig agreem;
  models::TrainingConfig training;
};

// Overwrites the fields named by `config`: learning_rate, batch_size, epochs,
// patience, dropout, hidden_a, hidden_b, k (relatednet/topknet), num_heads,
// d_k, d_v (agreemnet). ParameterError for any other name.
void apply_hyperparameters(const Configuration& config, TuningSetup& setup);

// Trains `setup.kind` with the trial's values and returns the best validation
// unweighted average class accuracy. Stage-2 kinds see only related samples.
Objective model_objective(const models::FeatureBank& bank, std::span<const data::SamplePair> train,
                          std::span<const data::SamplePair> validation, TuningSetup setup);

TuneResult tune_model(const models::FeatureBank& bank, std::span<const data::SamplePair> train,
                      std::span<const data::SamplePair> validation, const TuningSetup& setup,
                      const SearchSpace& space, const TuneOptions& options);

}  // namespace bait::hpo

#endif  // BAIT_HPO_OBJECTIVE_HPP_
