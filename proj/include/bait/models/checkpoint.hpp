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

// Model checkpoints reuse the embedding-store framing:
//
//   space byte 2 ("params"), unit byte = ModelKind, dim = 256
//   record 0: configuration as binary32 values
//             [kind, sim_dim, nli_dim, k, heads, d_k, d_v, hidden_a, hidden_b, dropout]
//   record i: tensor i-1 in declaration order (attention before dense layers),
//             flattened row-major and zero-padded to whole 256-value rows

#ifndef BAIT_MODELS_CHECKPOINT_HPP_
#define BAIT_MODELS_CHECKPOINT_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "bait/data/framing.hpp"
#include "bait/models/kind.hpp"
#include "bait/models/relatednet.hpp"
#include "bait/models/stage2.hpp"
#include "bait/rng.hpp"

namespace bait::models {

inline constexpr std::uint8_t kParamsSpace = 2;
inline constexpr std::uint32_t kCheckpointChunk = 256;
inline constexpr std::size_t kConfigFields = 10;

using ConfigValues = std::array<float, kConfigFields>;

ConfigValues encode_config(const RelatedNetConfig& config);
ConfigValues encode_config(const TopKNetConfig& config);
ConfigValues encode_config(const AgreemNetConfig& config);
// FormatError(kBadHeader) when a field is not a valid count/probability.
void decode_config(const ConfigValues& values, RelatedNetConfig& config);
void decode_config(const ConfigValues& values, TopKNetConfig& config);
void decode_config(const ConfigValues& values, AgreemNetConfig& config);

// Kind byte of a checkpoint; FormatError unless the file is a checkpoint.
ModelKind checkpoint_kind(const std::filesystem::path& path);

namespace detail {

data::Frame checkpoint_frame(ModelKind kind, const ConfigValues& config,
                             const std::vector<std::span<const float>>& tensors);
// Validates framing and returns the config record; `frame` is consumed by
// later tensor reads.
ConfigValues checkpoint_config(const data::Frame& frame, ModelKind kind, const std::string& name);
void read_tensor(const data::Frame& frame, std::size_t index, std::span<float> out,
                 const std::string& name);

}  // namespace detail

template <typename Model>
data::Frame encode_checkpoint(const typename Model::Config& config,
                              const typename Model::template Params<float>& params) {
  Model::check(config, params);
  std::vector<std::span<const float>> tensors;
  params.for_each_tensor([&](std::span<const float> t) { tensors.push_back(t); });
  return detail::checkpoint_frame(Model::kKind, encode_config(config), tensors);
}

template <typename Model>
void save_checkpoint(const std::filesystem::path& path, const typename Model::Config& config,
                     const typename Model::template Params<float>& params) {
  data::write_frame(path, encode_checkpoint<Model>(config, params));
}

template <typename Model>
struct Checkpoint {
  typename Model::Config config;
  typename Model::template Params<float> params;
};

template <typename Model>
Checkpoint<Model> decode_checkpoint(const data::Frame& frame, const std::string& name) {
  Checkpoint<Model> out;
  decode_config(detail::checkpoint_config(frame, Model::kKind, name), out.config);
  Rng rng(0);
  out.params = Model::template create<float>(out.config, rng);
  std::size_t index = 0;
  std::size_t tensors = 0;
  out.params.for_each_tensor([&](std::span<float>) { ++tensors; });
  if (frame.records.size() != tensors + 1) {
    throw FormatError(FormatError::Kind::kDimensionMismatch,
                      name + ": " + std::to_string(frame.records.size() - 1) +
                          " tensor records for a model with " + std::to_string(tensors));
  }
  out.params.for_each_tensor([&](std::span<float> t) { detail::read_tensor(frame, index++, t, name); });
  return out;
}

template <typename Model>
Checkpoint<Model> load_checkpoint(const std::filesystem::path& path) {
  return decode_checkpoint<Model>(data::read_frame(path), path.string());
}

}  // namespace bait::models

#endif  // BAIT_MODELS_CHECKPOINT_HPP_
