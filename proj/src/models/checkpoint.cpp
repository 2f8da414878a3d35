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

#include "bait/models/checkpoint.hpp"

#include <algorithm>
#include <cmath>

#include "bait/errors.hpp"

namespace bait::models {

namespace {

enum Field { kKindField, kSim, kNli, kK, kHeads, kDk, kDv, kHiddenA, kHiddenB, kDropout };

float count_value(std::size_t n) { return static_cast<float>(n); }

std::size_t count_field(const ConfigValues& v, Field f, const char* name) {
  const float x = v[f];
  if (!(x >= 1.0f) || x > 16777216.0f || std::floor(x) != x) {
    throw FormatError(FormatError::Kind::kBadHeader,
                      std::string("checkpoint field ") + name + " is not a positive count");
  }
  return static_cast<std::size_t>(x);
}

double dropout_field(const ConfigValues& v) {
  const float p = v[kDropout];
  if (!(p >= 0.0f && p < 1.0f)) {
    throw FormatError(FormatError::Kind::kBadHeader, "checkpoint dropout outside [0, 1)");
  }
  return static_cast<double>(p);
}

}  // namespace

ConfigValues encode_config(const RelatedNetConfig& c) {
  return {count_value(0), count_value(c.sim_dim), 0.0f, count_value(c.k), 0.0f, 0.0f, 0.0f,
          count_value(c.hidden_a), count_value(c.hidden_b), static_cast<float>(c.dropout)};
}

ConfigValues encode_config(const TopKNetConfig& c) {
  return {count_value(1), count_value(c.sim_dim), count_value(c.nli_dim), count_value(c.k), 0.0f,
          0.0f, 0.0f, count_value(c.hidden_a), count_value(c.hidden_b),
          static_cast<float>(c.dropout)};
}

ConfigValues encode_config(const AgreemNetConfig& c) {
  return {count_value(2), count_value(c.sim_dim), count_value(c.nli_dim), 0.0f,
          count_value(c.num_heads), count_value(c.d_k), count_value(c.d_v),
          count_value(c.hidden_a), count_value(c.hidden_b), static_cast<float>(c.dropout)};
}

void decode_config(const ConfigValues& v, RelatedNetConfig& c) {
  c.sim_dim = count_field(v, kSim, "sim_dim");
  c.k = count_field(v, kK, "k");
  c.hidden_a = count_field(v, kHiddenA, "hidden_a");
  c.hidden_b = count_field(v, kHiddenB, "hidden_b");
  c.dropout = dropout_field(v);
}

void decode_config(const ConfigValues& v, TopKNetConfig& c) {
  c.sim_dim = count_field(v, kSim, "sim_dim");
  c.nli_dim = count_field(v, kNli, "nli_dim");
  c.k = count_field(v, kK, "k");
  c.hidden_a = count_field(v, kHiddenA, "hidden_a");
  c.hidden_b = count_field(v, kHiddenB, "hidden_b");
  c.dropout = dropout_field(v);
}

void decode_config(const ConfigValues& v, AgreemNetConfig& c) {
  c.sim_dim = count_field(v, kSim, "sim_dim");
  c.nli_dim = count_field(v, kNli, "nli_dim");
  c.num_heads = count_field(v, kHeads, "num_heads");
  c.d_k = count_field(v, kDk, "d_k");
  c.d_v = count_field(v, kDv, "d_v");
  c.hidden_a = count_field(v, kHiddenA, "hidden_a");
  c.hidden_b = count_field(v, kHiddenB, "hidden_b");
  c.dropout = dropout_field(v);
}

ModelKind checkpoint_kind(const std::filesystem::path& path) {
  const data::Frame frame = data::read_frame(path);
  if (frame.header.space != kParamsSpace) {
    throw FormatError(FormatError::Kind::kBadHeader,
                      path.string() + " is an embedding store, not a model checkpoint");
  }
  if (frame.header.unit > static_cast<std::uint8_t>(ModelKind::kAgreemNet)) {
    throw FormatError(FormatError::Kind::kBadHeader,
                      path.string() + ": unknown model kind " + std::to_string(frame.header.unit));
  }
  return static_cast<ModelKind>(frame.header.unit);
}

namespace detail {

data::Frame checkpoint_frame(ModelKind kind, const ConfigValues& config,
                             const std::vector<std::span<const float>>& tensors) {
  data::Frame frame;
  frame.header.space = kParamsSpace;
  frame.header.unit = static_cast<std::uint8_t>(kind);
  frame.header.dim = kCheckpointChunk;
  auto add = [&](std::span<const float> values) {
    data::FrameRecord rec;
    rec.id = static_cast<std::uint32_t>(frame.records.size());
    const std::size_t rows = (values.size() + kCheckpointChunk - 1) / kCheckpointChunk;
    if (rows > 0xFFFF) {
      throw ParameterError("tensor of " + std::to_string(values.size()) +
                           " values exceeds the checkpoint record limit");
    }
    rec.num_rows = static_cast<std::uint16_t>(rows);
    rec.values.assign(rows * kCheckpointChunk, 0.0f);
    std::copy(values.begin(), values.end(), rec.values.begin());
    frame.records.push_back(std::move(rec));
  };
  add(config);
  for (const auto& t : tensors) add(t);
  frame.header.record_count = static_cast<std::uint32_t>(frame.records.size());
  return frame;
}

ConfigValues checkpoint_config(const data::Frame& frame, ModelKind kind, const std::string& name) {
  const auto& h = frame.header;
  if (h.space != kParamsSpace) {
    throw FormatError(FormatError::Kind::kBadHeader, name + " is not a model checkpoint");
  }
  if (h.unit != static_cast<std::uint8_t>(kind)) {
    throw FormatError(FormatError::Kind::kBadHeader,
                      name + " holds a model of kind " + std::to_string(h.unit) + ", expected " +
                          std::string(kind_name(kind)));
  }
  if (h.dim != kCheckpointChunk) {
    throw FormatError(FormatError::Kind::kDimensionMismatch,
                      name + ": checkpoint row width " + std::to_string(h.dim));
  }
  if (frame.records.empty() || frame.records[0].num_rows != 1) {
    throw FormatError(FormatError::Kind::kBadHeader, name + ": missing configuration record");
  }
  ConfigValues v{};
  std::copy_n(frame.records[0].values.begin(), kConfigFields, v.begin());
  if (v[0] != static_cast<float>(static_cast<std::uint8_t>(kind))) {
    throw FormatError(FormatError::Kind::kBadHeader, name + ": configuration kind disagrees with header");
  }
  return v;
}

void read_tensor(const data::Frame& frame, std::size_t index, std::span<float> out,
                 const std::string& name) {
  const auto& rec = frame.records.at(index + 1);
  const std::size_t rows = (out.size() + kCheckpointChunk - 1) / kCheckpointChunk;
  if (rec.num_rows != rows) {
    throw FormatError(FormatError::Kind::kDimensionMismatch,
                      name + ": tensor " + std::to_string(index) + " has " +
                          std::to_string(rec.num_rows) + " rows, expected " + std::to_string(rows));
  }
  std::copy_n(rec.values.begin(), out.size(), out.begin());
}

}  // namespace detail

}  // namespace bait::models
