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

#ifndef BAIT_MODELS_RELATEDNET_HPP_
#define BAIT_MODELS_RELATEDNET_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "bait/data/corpus.hpp"
#include "bait/data/embedding_store.hpp"
#include "bait/models/features.hpp"
#include "bait/models/kind.hpp"
#include "bait/models/mlp.hpp"
#include "bait/nn/matrix.hpp"
#include "bait/nn/tape.hpp"
#include "bait/rng.hpp"

namespace bait::models {

// Stage-1 related/unrelated classifier over similarity-space embeddings.
struct RelatedNetConfig {
  std::size_t sim_dim = data::kDefaultSimDim;
  std::size_t k = 4;
  std::size_t hidden_a = 600;  // first three hidden layers
  std::size_t hidden_b = 600;  // final hidden layer
  double dropout = 0.277;

  // ParameterError naming the offending field.
  void validate() const;
  std::size_t input_dim() const { return (k + 1) * sim_dim; }
  std::vector<std::size_t> layer_widths() const;
};

template <typename T>
using BasicRelatedNetParams = BasicMlp<T>;
using RelatedNetParams = BasicRelatedNetParams<float>;

// Closed-form weight + bias total for the configuration.
std::size_t parameter_count(const RelatedNetConfig& config);

struct TopK {
  std::vector<std::size_t> indices;  // descending similarity
  std::vector<double> scores;        // aligned with indices
};

// The k unmasked rows most similar to `head`, most similar first. Ties go to
// the lower row index and zero-norm rows rank last. Bodies with fewer than k
// real rows repeat the last selected index so the width stays fixed.
TopK top_k_similar(std::span<const float> head, const data::PaddedBody& body, std::size_t k);

// Writes [head | rows of `body` at `indices`] into `out`.
void gather_rows(std::span<const float> head, const nn::Matrix& body,
                 std::span<const std::size_t> indices, std::span<float> out);

// (batch x input_dim) stage-1 input matrix.
nn::Matrix relatednet_inputs(std::span<const SampleInput* const> batch,
                             const RelatedNetConfig& config);

struct RelatedNet {
  using Config = RelatedNetConfig;
  template <typename T>
  using Params = BasicRelatedNetParams<T>;

  static constexpr std::size_t kClasses = 2;
  static constexpr std::size_t kRelatedIndex = 1;
  static constexpr Views kViews = Views::kSim;
  static constexpr ModelKind kKind = ModelKind::kRelatedNet;
  static constexpr const char* kName = "relatednet";

  // Class index for a stance: 1 for related, 0 for unrelated.
  static std::size_t label_of(data::Stance s) { return data::is_related(s) ? 1 : 0; }

  template <typename T>
  static Params<T> create(const Config& config, Rng& rng) {
    config.validate();
    auto p = Params<T>::with_widths(config.layer_widths());
    p.init(rng);
    return p;
  }

  static void check(const Config& config, const Params<float>& params);

  // (batch x 2) probabilities [P(unrelated), P(related)].
  template <typename T>
  static nn::Var forward(nn::BasicTape<T>& tape, const Params<T>& params, Params<T>* grads,
                         const Config& config, std::span<const SampleInput* const> batch,
                         Mode mode, Rng& rng, std::vector<nn::Var>* preactivations = nullptr) {
    nn::Var x = tape.constant(relatednet_inputs(batch, config).template cast<T>());
    return params.forward(tape, x, grads, config.dropout, mode, rng, preactivations);
  }
};

// P(related) for one sample in inference mode.
double relatednet_probability(const RelatedNetParams& params, const RelatedNetConfig& config,
                              const SampleInput& sample);

struct ThresholdResult {
  double threshold = 0.0;  // predict related when score >= threshold
  double f1 = 0.0;         // F1 of the related class
};

// Mean cosine of the top-`k` body rows per sample.
double mean_top_k_similarity(const SampleInput& sample, std::size_t k = 5);

// Sweeps every observed score as a threshold and keeps the one maximizing
// related-class F1 (the lowest such threshold on ties). ParameterError when
// empty or lengths differ.
ThresholdResult best_threshold(std::span<const double> scores, std::span<const bool> related);

// Training-free stage-1 baseline over a labelled dataset. Samples whose body
// has no sentences are skipped.
ThresholdResult threshold_baseline(const FeatureBank& bank,
                                   std::span<const data::SamplePair> samples, std::size_t k = 5);

}  // namespace bait::models

#endif  // BAIT_MODELS_RELATEDNET_HPP_
