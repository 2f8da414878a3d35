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

#include "bait/models/stage2.hpp"

#include <string>

#include "bait/models/relatednet.hpp"

namespace bait::models {

namespace {

void require_positive(std::size_t value, const char* name) {
  if (value == 0) throw ParameterError(std::string(name) + " must be at least 1");
}

void require_dropout(double p) {
  if (!(p >= 0.0 && p < 1.0)) {
    throw ParameterError("dropout must lie in [0, 1), got " + std::to_string(p));
  }
}

std::size_t dense_total(const std::vector<std::size_t>& widths) {
  std::size_t n = 0;
  for (std::size_t i = 0; i + 1 < widths.size(); ++i) n += widths[i] * widths[i + 1] + widths[i + 1];
  return n;
}

void check_mlp(const BasicMlp<float>& mlp, const std::vector<std::size_t>& widths,
               const char* model) {
  bool ok = mlp.layers.size() + 1 == widths.size();
  for (std::size_t i = 0; ok && i < mlp.layers.size(); ++i) {
    mlp.layers[i].validate();
    ok = mlp.layers[i].in_dim() == widths[i] && mlp.layers[i].out_dim() == widths[i + 1];
  }
  if (!ok) throw DimensionError(std::string(model) + " parameters do not match the configuration");
}

}  // namespace

std::size_t stage2_label(data::Stance s) {
  if (!data::is_related(s)) {
    throw ContractError("stage-2 models only accept related samples, got " +
                        std::string(data::stance_name(s)));
  }
  return data::index_of(s);
}

data::Stance stage2_stance(std::size_t index) {
  if (index >= kStage2Classes) {
    throw IndexError("stage-2 class index " + std::to_string(index) + " out of range");
  }
  return data::kAllStances[index];
}

void check_matching_masks(const SampleInput& sample) {
  if (sample.sim_body.mask != sample.nli_body.mask) {
    throw IntegrityError("similarity and inference bodies have different sentence masks (" +
                         std::to_string(sample.sim_body.length) + " vs " +
                         std::to_string(sample.nli_body.length) + " sentences)");
  }
}

void TopKNetConfig::validate() const {
  require_positive(sim_dim, "sim_dim");
  require_positive(nli_dim, "nli_dim");
  require_positive(k, "k");
  require_positive(hidden_a, "hidden_a");
  require_positive(hidden_b, "hidden_b");
  require_dropout(dropout);
}

std::vector<std::size_t> TopKNetConfig::layer_widths() const {
  return {input_dim(), hidden_a, hidden_a, hidden_a, hidden_b, kStage2Classes};
}

std::size_t parameter_count(const TopKNetConfig& config) { return dense_total(config.layer_widths()); }

nn::Matrix topknet_inputs(std::span<const SampleInput* const> batch, const TopKNetConfig& config) {
  nn::Matrix x(batch.size(), config.input_dim());
  for (std::size_t b = 0; b < batch.size(); ++b) {
    const SampleInput& s = *batch[b];
    check_matching_masks(s);
    if (s.nli_head.size() != config.nli_dim) {
      throw DimensionError("inference head of width " + std::to_string(s.nli_head.size()) +
                           " for a model expecting " + std::to_string(config.nli_dim));
    }
    const TopK top = top_k_similar(s.sim_head, s.sim_body, config.k);
    gather_rows(s.nli_head, s.nli_body.matrix, top.indices, x.row(b));
  }
  return x;
}

void TopKNet::check(const Config& config, const Params<float>& params) {
  config.validate();
  check_mlp(params, config.layer_widths(), kName);
}

void AgreemNetConfig::validate() const {
  require_positive(sim_dim, "sim_dim");
  require_positive(nli_dim, "nli_dim");
  require_positive(num_heads, "num_heads");
  require_positive(d_k, "d_k");
  require_positive(d_v, "d_v");
  require_positive(hidden_a, "hidden_a");
  require_positive(hidden_b, "hidden_b");
  require_dropout(dropout);
}

std::vector<std::size_t> AgreemNetConfig::layer_widths() const {
  return {classifier_input_dim(), hidden_a, hidden_a, hidden_b, kStage2Classes};
}

std::size_t parameter_count(const AgreemNetConfig& config) {
  const std::size_t hk = config.num_heads * config.d_k;
  const std::size_t hv = config.num_heads * config.d_v;
  const std::size_t attention = hk * (config.sim_dim + 1)    // query projection
                                + hk * (config.sim_dim + 1)  // key projection
                                + hv * (config.nli_dim + 1)  // value projection
                                + config.nli_dim * (hv + 1);  // output projection
  return attention + dense_total(config.layer_widths());
}

void AgreemNet::check(const Config& config, const Params<float>& params) {
  config.validate();
  params.attention.validate();
  const auto& a = params.attention;
  if (a.num_heads != config.num_heads || a.d_k != config.d_k || a.d_v != config.d_v ||
      a.q_dim() != config.sim_dim || a.k_dim() != config.sim_dim || a.v_dim() != config.nli_dim ||
      a.out_dim() != config.nli_dim) {
    throw DimensionError("agreemnet attention parameters do not match the configuration");
  }
  check_mlp(params.mlp, config.layer_widths(), kName);
}

std::size_t stage2_param_count(const TopKNetConfig& config) { return parameter_count(config); }
std::size_t stage2_param_count(const AgreemNetConfig& config) { return parameter_count(config); }

}  // namespace bait::models
