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

#ifndef BAIT_MODELS_TRAINER_HPP_
#define BAIT_MODELS_TRAINER_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "bait/augment/class_weights.hpp"
#include "bait/data/corpus.hpp"
#include "bait/errors.hpp"
#include "bait/log.hpp"
#include "bait/models/features.hpp"
#include "bait/models/mlp.hpp"
#include "bait/nn/adam.hpp"
#include "bait/nn/matrix.hpp"
#include "bait/nn/tape.hpp"
#include "bait/rng.hpp"

namespace bait::models {

struct TrainingConfig {
  double learning_rate = 1e-3;
  std::size_t batch_size = 64;
  std::size_t epochs = 30;
  std::size_t patience = 5;  // epochs without validation gain; 0 disables
  bool weighted_loss = false;
  std::vector<double> class_weights;  // explicit weights; override weighted_loss

  void validate() const;
};

struct EpochRecord {
  std::size_t epoch = 0;  // 1-based
  double train_loss = 0.0;
  double train_accuracy = 0.0;
  double validation_accuracy = 0.0;  // unweighted average class accuracy
};

// Lowest index among the maxima.
std::size_t argmax(std::span<const float> values);

// Mean recall over the classes that occur in `gold`. ParameterError when
// empty or lengths differ.
double unweighted_average_accuracy(std::span<const std::size_t> gold,
                                   std::span<const std::size_t> predicted, std::size_t classes);

template <typename Model>
struct TrainedModel {
  typename Model::template Params<float> params;
  std::vector<EpochRecord> log;
  std::size_t best_epoch = 0;
  double best_validation_accuracy = 0.0;
  std::vector<double> class_weights;
};

// Class indices for `samples`; stage-2 models reject unrelated samples with a
// ContractError.
template <typename Model>
std::vector<std::size_t> model_labels(std::span<const data::SamplePair> samples) {
  std::vector<std::size_t> labels;
  labels.reserve(samples.size());
  for (const auto& s : samples) labels.push_back(Model::label_of(s.stance));
  return labels;
}

// (samples x classes) inference-mode probabilities.
template <typename Model, typename Pairs>
nn::Matrix predict_probabilities(const FeatureBank& bank, const Pairs& samples,
                                 const typename Model::template Params<float>& params,
                                 const typename Model::Config& config,
                                 std::size_t batch_size = 256) {
  nn::Matrix out(samples.size(), Model::kClasses);
  Rng unused(0);
  for (std::size_t start = 0; start < samples.size(); start += batch_size) {
    const std::size_t end = std::min(samples.size(), start + batch_size);
    std::vector<SampleInput> inputs;
    inputs.reserve(end - start);
    for (std::size_t i = start; i < end; ++i) {
      inputs.push_back(bank.prepare(samples[i].headline_id, samples[i].body_id, Model::kViews));
    }
    std::vector<const SampleInput*> batch;
    for (const auto& in : inputs) batch.push_back(&in);
    nn::Tape tape;
    const nn::Var p = Model::template forward<float>(tape, params, nullptr, config, batch,
                                                     Mode::kInference, unused);
    for (std::size_t i = start; i < end; ++i) {
      const auto row = tape.value(p).row(i - start);
      std::copy(row.begin(), row.end(), out.row(i).begin());
    }
  }
  return out;
}

// Loss weights per class: explicit ones, balanced ones from `labels`, or all 1.
std::vector<double> resolve_class_weights(const TrainingConfig& training,
                                          std::span<const std::size_t> labels,
                                          std::size_t classes);

// Adam on the (optionally class-weighted) mean cross-entropy; keeps the
// parameters of the epoch with the best validation unweighted average class
// accuracy. Every random decision derives from `seed`.
template <typename Model>
TrainedModel<Model> train_model(const FeatureBank& bank, std::span<const data::SamplePair> train,
                                std::span<const data::SamplePair> validation,
                                const typename Model::Config& config,
                                const TrainingConfig& training, std::uint64_t seed) {
  training.validate();
  config.validate();
  if (train.empty()) throw ParameterError("training split is empty");
  if (validation.empty()) throw ParameterError("validation split is empty");
  const auto labels = model_labels<Model>(train);
  const auto val_labels = model_labels<Model>(validation);

  TrainedModel<Model> result;
  result.class_weights = resolve_class_weights(training, labels, Model::kClasses);
  const std::vector<float> weights(result.class_weights.begin(), result.class_weights.end());

  Rng init_rng = Rng::derive(seed, 0);
  Rng order_rng = Rng::derive(seed, 1);
  Rng dropout_rng = Rng::derive(seed, 2);
  auto params = Model::template create<float>(config, init_rng);
  auto grads = params;
  nn::OptimizerState state;
  result.params = params;
  result.best_validation_accuracy = -1.0;

  std::vector<std::size_t> order(train.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::size_t stale = 0;
  for (std::size_t epoch = 1; epoch <= training.epochs; ++epoch) {
    order_rng.shuffle(order.begin(), order.end());
    double loss_sum = 0.0;
    std::size_t correct = 0;
    for (std::size_t start = 0; start < order.size(); start += training.batch_size) {
      const std::size_t end = std::min(order.size(), start + training.batch_size);
      std::vector<SampleInput> inputs;
      std::vector<std::size_t> batch_labels;
      inputs.reserve(end - start);
      for (std::size_t i = start; i < end; ++i) {
        const auto& s = train[order[i]];
        inputs.push_back(bank.prepare(s.headline_id, s.body_id, Model::kViews));
        batch_labels.push_back(labels[order[i]]);
      }
      std::vector<const SampleInput*> batch;
      for (const auto& in : inputs) batch.push_back(&in);

      grads.zero();
      nn::Tape tape;
      const nn::Var probs = Model::template forward<float>(tape, params, &grads, config, batch,
                                                           Mode::kTraining, dropout_rng);
      for (std::size_t r = 0; r < batch.size(); ++r) {
        correct += argmax(tape.value(probs).row(r)) == batch_labels[r] ? 1 : 0;
      }
      const nn::Var loss = tape.weighted_nll(probs, batch_labels, weights);
      loss_sum += static_cast<double>(tape.value(loss)(0, 0)) * static_cast<double>(batch.size());
      tape.backward(loss);
      nn::adam_step(params, grads, state, training.learning_rate);
    }

    const nn::Matrix val_probs = predict_probabilities<Model>(bank, validation, params, config);
    std::vector<std::size_t> val_pred;
    for (std::size_t i = 0; i < validation.size(); ++i) val_pred.push_back(argmax(val_probs.row(i)));
    EpochRecord rec{epoch, loss_sum / static_cast<double>(train.size()),
                    static_cast<double>(correct) / static_cast<double>(train.size()),
                    unweighted_average_accuracy(val_labels, val_pred, Model::kClasses)};
    result.log.push_back(rec);
    log::info(Model::kName, " epoch ", epoch, ": loss ", rec.train_loss, ", train accuracy ",
              rec.train_accuracy, ", validation accuracy ", rec.validation_accuracy);

    if (rec.validation_accuracy > result.best_validation_accuracy) {
      result.best_validation_accuracy = rec.validation_accuracy;
      result.best_epoch = epoch;
      result.params = params;
      stale = 0;
    } else if (training.patience > 0 && ++stale >= training.patience) {
      log::info(Model::kName, " stopping early after epoch ", epoch);
      break;
    }
  }
  return result;
}

}  // namespace bait::models

#endif  // BAIT_MODELS_TRAINER_HPP_
