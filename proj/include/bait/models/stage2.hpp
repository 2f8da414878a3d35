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

#ifndef BAIT_MODELS_STAGE2_HPP_
#define BAIT_MODELS_STAGE2_HPP_

#include <cstddef>
#include <span>
#include <type_traits>
#include <vector>

#include "bait/data/corpus.hpp"
#include "bait/data/embedding_store.hpp"
#include "bait/errors.hpp"
#include "bait/models/features.hpp"
#include "bait/models/kind.hpp"
#include "bait/models/mlp.hpp"
#include "bait/nn/params.hpp"
#include "bait/nn/tape.hpp"
#include "bait/rng.hpp"

namespace bait::models {

inline constexpr std::size_t kStage2Classes = 3;

// Stage-2 class index (AGR 0, DSG 1, DSC 2); ContractError for unrelated.
std::size_t stage2_label(data::Stance s);
data::Stance stage2_stance(std::size_t index);

// IntegrityError unless the SIM and NLI bodies share one mask.
void check_matching_masks(const SampleInput& sample);

// Three-way classifier over [NLI-head | NLI rows of the top-k SIM sentences].
struct TopKNetConfig {
  std::size_t sim_dim = data::kDefaultSimDim;
  std::size_t nli_dim = data::kDefaultNliDim;
  std::size_t k = 3;
  std::size_t hidden_a = 60;
  std::size_t hidden_b = 60;
  double dropout = 0.301;

  void validate() const;
  std::size_t input_dim() const { return (k + 1) * nli_dim; }
  std::vector<std::size_t> layer_widths() const;
};

template <typename T>
using BasicTopKNetParams = BasicMlp<T>;
using TopKNetParams = BasicTopKNetParams<float>;

std::size_t parameter_count(const TopKNetConfig& config);

// (batch x input_dim) TopKNet input matrix.
nn::Matrix topknet_inputs(std::span<const SampleInput* const> batch, const TopKNetConfig& config);

// Three-way classifier over [attended NLI body | NLI-head | cosine of the two],
// where the body is attended with the SIM-head as query and SIM-body as keys.
struct AgreemNetConfig {
  std::size_t sim_dim = data::kDefaultSimDim;
  std::size_t nli_dim = data::kDefaultNliDim;
  std::size_t num_heads = 11;
  std::size_t d_k = 64;
  std::size_t d_v = 64;
  std::size_t hidden_a = 60;  // first two hidden layers
  std::size_t hidden_b = 20;
  double dropout = 0.105;  // classifier tail only

  void validate() const;
  std::size_t classifier_input_dim() const { return 2 * nli_dim + 1; }
  std::vector<std::size_t> layer_widths() const;
};

template <typename T>
struct BasicAgreemNetParams {
  nn::BasicAttentionParams<T> attention;
  BasicMlp<T> mlp;

  std::size_t parameter_count() const {
    return attention.parameter_count() + mlp.parameter_count();
  }
  void init(Rng& rng) {
    attention.init(rng);
    mlp.init(rng);
  }
  void zero() {
    attention.zero();
    mlp.zero();
  }
  // Attention tensors precede the dense layers.
  template <typename F>
  void for_each_tensor(F&& f) {
    attention.for_each_tensor(f);
    mlp.for_each_tensor(f);
  }
  template <typename F>
  void for_each_tensor(F&& f) const {
    attention.for_each_tensor(f);
    mlp.for_each_tensor(f);
  }
  template <typename U>
  BasicAgreemNetParams<U> cast() const {
    return {attention.template cast<U>(), mlp.template cast<U>()};
  }
};
using AgreemNetParams = BasicAgreemNetParams<float>;

std::size_t parameter_count(const AgreemNetConfig& config);

namespace detail {

// Returns `m` itself at float precision, otherwise a converted copy owned by
// the tape.
template <typename T>
const nn::BasicMatrix<T>& on_tape(nn::BasicTape<T>& tape, const nn::Matrix& m) {
  if constexpr (std::is_same_v<T, float>) {
    return m;
  } else {
    return tape.hold(m.template cast<T>());
  }
}

template <typename T>
std::span<const T> on_tape(nn::BasicTape<T>& tape, std::span<const float> v) {
  if constexpr (std::is_same_v<T, float>) {
    return v;
  } else {
    const auto& held = tape.hold(std::vector<T>(v.begin(), v.end()));
    return held;
  }
}

}  // namespace detail

struct TopKNet {
  using Config = TopKNetConfig;
  template <typename T>
  using Params = BasicTopKNetParams<T>;

  static constexpr std::size_t kClasses = kStage2Classes;
  static constexpr Views kViews = Views::kBoth;
  static constexpr ModelKind kKind = ModelKind::kTopKNet;
  static constexpr const char* kName = "topknet";

  static std::size_t label_of(data::Stance s) { return stage2_label(s); }

  template <typename T>
  static Params<T> create(const Config& config, Rng& rng) {
    config.validate();
    auto p = Params<T>::with_widths(config.layer_widths());
    p.init(rng);
    return p;
  }

  static void check(const Config& config, const Params<float>& params);

  template <typename T>
  static nn::Var forward(nn::BasicTape<T>& tape, const Params<T>& params, Params<T>* grads,
                         const Config& config, std::span<const SampleInput* const> batch,
                         Mode mode, Rng& rng, std::vector<nn::Var>* preactivations = nullptr) {
    nn::Var x = tape.constant(topknet_inputs(batch, config).template cast<T>());
    return params.forward(tape, x, grads, config.dropout, mode, rng, preactivations);
  }
};

struct AgreemNet {
  using Config = AgreemNetConfig;
  template <typename T>
  using Params = BasicAgreemNetParams<T>;

  static constexpr std::size_t kClasses = kStage2Classes;
  static constexpr Views kViews = Views::kBoth;
  static constexpr ModelKind kKind = ModelKind::kAgreemNet;
  static constexpr const char* kName = "agreemnet";

  static std::size_t label_of(data::Stance s) { return stage2_label(s); }

  template <typename T>
  static Params<T> create(const Config& config, Rng& rng) {
    config.validate();
    Params<T> p{nn::BasicAttentionParams<T>(config.num_heads, config.d_k, config.d_v,
                                            config.sim_dim, config.sim_dim, config.nli_dim,
                                            config.nli_dim),
                BasicMlp<T>::with_widths(config.layer_widths())};
    p.init(rng);
    return p;
  }

  static void check(const Config& config, const Params<float>& params);

  template <typename T>
  static nn::Var forward(nn::BasicTape<T>& tape, const Params<T>& params, Params<T>* grads,
                         const Config& config, std::span<const SampleInput* const> batch,
                         Mode mode, Rng& rng, std::vector<nn::Var>* preactivations = nullptr) {
    std::vector<nn::AttentionInput<T>> inputs;
    nn::Matrix heads(batch.size(), config.nli_dim);
    for (std::size_t b = 0; b < batch.size(); ++b) {
      const SampleInput& s = *batch[b];
      check_matching_masks(s);
      if (s.nli_head.size() != config.nli_dim) {
        throw DimensionError("inference head of width " + std::to_string(s.nli_head.size()) +
                             " for a model expecting " + std::to_string(config.nli_dim));
      }
      std::copy(s.nli_head.begin(), s.nli_head.end(), heads.row(b).begin());
      inputs.push_back({detail::on_tape(tape, s.sim_head), &detail::on_tape(tape, s.sim_body.matrix),
                        &detail::on_tape(tape, s.nli_body.matrix), &s.sim_body.mask});
    }
    const nn::Var attended =
        tape.attention(std::move(inputs), params.attention, grads ? &grads->attention : nullptr);
    const auto& head_values = tape.hold(heads.template cast<T>());
    const nn::Var head = tape.constant(head_values);
    const nn::Var cosine = tape.cosine_rows(attended, head_values);
    const nn::Var x = tape.concat_cols({attended, head, cosine});
    return params.mlp.forward(tape, x, grads ? &grads->mlp : nullptr, config.dropout, mode, rng,
                              preactivations);
  }
};

// Closed-form totals by kind; configs are passed by kind-specific overloads.
std::size_t stage2_param_count(const TopKNetConfig& config);
std::size_t stage2_param_count(const AgreemNetConfig& config);

// Inference-mode distribution over {AGR, DSG, DSC} for one sample.
template <typename Model>
std::vector<double> stage2_distribution(const typename Model::template Params<float>& params,
                                        const typename Model::Config& config,
                                        const SampleInput& sample) {
  nn::Tape tape;
  Rng rng(0);
  const SampleInput* batch[] = {&sample};
  const nn::Var p =
      Model::template forward<float>(tape, params, nullptr, config, batch, Mode::kInference, rng);
  const auto row = tape.value(p).row(0);
  return {row.begin(), row.end()};
}

}  // namespace bait::models

#endif  // BAIT_MODELS_STAGE2_HPP_
