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

#ifndef BAIT_NN_PARAMS_HPP_
#define BAIT_NN_PARAMS_HPP_

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "bait/errors.hpp"
#include "bait/nn/matrix.hpp"
#include "bait/rng.hpp"

namespace bait::nn {

// Fully connected layer, y = x W^T + b. weight is (out x in).
template <typename T>
struct BasicDenseLayerParams {
  BasicMatrix<T> weight;
  std::vector<T> bias;

  BasicDenseLayerParams() = default;
  BasicDenseLayerParams(std::size_t in, std::size_t out) : weight(out, in), bias(out, T{0}) {}

  std::size_t in_dim() const { return weight.cols(); }
  std::size_t out_dim() const { return weight.rows(); }
  std::size_t parameter_count() const { return weight.size() + bias.size(); }

  void validate() const {
    if (bias.size() != weight.rows()) {
      throw DimensionError("dense bias length " + std::to_string(bias.size()) +
                           " does not match weight " + weight.shape());
    }
  }

  // He-uniform weights, zero bias.
  void init(Rng& rng) {
    const double bound = std::sqrt(6.0 / static_cast<double>(in_dim()));
    for (T& w : weight.values()) w = static_cast<T>((2.0 * rng.uniform() - 1.0) * bound);
    std::fill(bias.begin(), bias.end(), T{0});
  }

  void zero() {
    weight.fill(T{0});
    std::fill(bias.begin(), bias.end(), T{0});
  }

  template <typename F>
  void for_each_tensor(F&& f) {
    f(weight.values());
    f(std::span<T>(bias));
  }
  template <typename F>
  void for_each_tensor(F&& f) const {
    f(weight.values());
    f(std::span<const T>(bias));
  }

  template <typename U>
  BasicDenseLayerParams<U> cast() const {
    BasicDenseLayerParams<U> out;
    out.weight = weight.template cast<U>();
    out.bias.assign(bias.begin(), bias.end());
    return out;
  }
};

// Multi-head attention with learned projections. Head h owns rows
// [h*d_k, (h+1)*d_k) of query_proj/key_proj and rows [h*d_v, (h+1)*d_v) of
// value_proj; output_proj maps the concatenated heads to out_dim.
template <typename T>
struct BasicAttentionParams {
  std::size_t num_heads = 1;
  std::size_t d_k = 1;
  std::size_t d_v = 1;
  BasicMatrix<T> query_proj;   // (H*d_k x q_dim)
  BasicMatrix<T> key_proj;     // (H*d_k x k_dim)
  BasicMatrix<T> value_proj;   // (H*d_v x v_dim)
  BasicMatrix<T> output_proj;  // (out_dim x H*d_v)
  std::vector<T> query_bias;
  std::vector<T> key_bias;
  std::vector<T> value_bias;
  std::vector<T> output_bias;

  BasicAttentionParams() = default;
  BasicAttentionParams(std::size_t heads, std::size_t dk, std::size_t dv, std::size_t q_dim,
                       std::size_t k_dim, std::size_t v_dim, std::size_t out_dim)
      : num_heads(heads),
        d_k(dk),
        d_v(dv),
        query_proj(heads * dk, q_dim),
        key_proj(heads * dk, k_dim),
        value_proj(heads * dv, v_dim),
        output_proj(out_dim, heads * dv),
        query_bias(heads * dk, T{0}),
        key_bias(heads * dk, T{0}),
        value_bias(heads * dv, T{0}),
        output_bias(out_dim, T{0}) {
    validate();
  }

  std::size_t q_dim() const { return query_proj.cols(); }
  std::size_t k_dim() const { return key_proj.cols(); }
  std::size_t v_dim() const { return value_proj.cols(); }
  std::size_t out_dim() const { return output_proj.rows(); }

  std::size_t parameter_count() const {
    return query_proj.size() + key_proj.size() + value_proj.size() + output_proj.size() +
           query_bias.size() + key_bias.size() + value_bias.size() + output_bias.size();
  }

  void validate() const {
    if (num_heads < 1 || d_k < 1 || d_v < 1) {
      throw ParameterError("attention needs at least one head and positive head dims");
    }
    const auto expect = [](bool ok, const std::string& what) {
      if (!ok) throw DimensionError("attention " + what);
    };
    expect(query_proj.rows() == num_heads * d_k, "query_proj " + query_proj.shape());
    expect(key_proj.rows() == num_heads * d_k, "key_proj " + key_proj.shape());
    expect(value_proj.rows() == num_heads * d_v, "value_proj " + value_proj.shape());
    expect(output_proj.cols() == num_heads * d_v, "output_proj " + output_proj.shape());
    expect(query_bias.size() == query_proj.rows(), "query_bias length");
    expect(key_bias.size() == key_proj.rows(), "key_bias length");
    expect(value_bias.size() == value_proj.rows(), "value_bias length");
    expect(output_bias.size() == output_proj.rows(), "output_bias length");
  }

  // Xavier-uniform projections, zero biases.
  void init(Rng& rng) {
    const auto xavier = [&rng](BasicMatrix<T>& m) {
      const double bound = std::sqrt(6.0 / static_cast<double>(m.rows() + m.cols()));
      for (T& w : m.values()) w = static_cast<T>((2.0 * rng.uniform() - 1.0) * bound);
    };
    xavier(query_proj);
    xavier(key_proj);
    xavier(value_proj);
    xavier(output_proj);
    for (auto* b : {&query_bias, &key_bias, &value_bias, &output_bias}) {
      std::fill(b->begin(), b->end(), T{0});
    }
  }

  void zero() {
    for_each_tensor([](std::span<T> t) { std::fill(t.begin(), t.end(), T{0}); });
  }

  // Serialization order: projections q, k, v, o, then biases in the same order.
  template <typename F>
  void for_each_tensor(F&& f) {
    f(query_proj.values());
    f(key_proj.values());
    f(value_proj.values());
    f(output_proj.values());
    f(std::span<T>(query_bias));
    f(std::span<T>(key_bias));
    f(std::span<T>(value_bias));
    f(std::span<T>(output_bias));
  }
  template <typename F>
  void for_each_tensor(F&& f) const {
    f(query_proj.values());
    f(key_proj.values());
    f(value_proj.values());
    f(output_proj.values());
    f(std::span<const T>(query_bias));
    f(std::span<const T>(key_bias));
    f(std::span<const T>(value_bias));
    f(std::span<const T>(output_bias));
  }

  template <typename U>
  BasicAttentionParams<U> cast() const {
    BasicAttentionParams<U> out;
    out.num_heads = num_heads;
    out.d_k = d_k;
    out.d_v = d_v;
    out.query_proj = query_proj.template cast<U>();
    out.key_proj = key_proj.template cast<U>();
    out.value_proj = value_proj.template cast<U>();
    out.output_proj = output_proj.template cast<U>();
    out.query_bias.assign(query_bias.begin(), query_bias.end());
    out.key_bias.assign(key_bias.begin(), key_bias.end());
    out.value_bias.assign(value_bias.begin(), value_bias.end());
    out.output_bias.assign(output_bias.begin(), output_bias.end());
    return out;
  }
};

using DenseLayerParams = BasicDenseLayerParams<float>;
using AttentionParams = BasicAttentionParams<float>;

}  // namespace bait::nn

#endif  // BAIT_NN_PARAMS_HPP_
