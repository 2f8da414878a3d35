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

#ifndef BAIT_NN_OPS_HPP_
#define BAIT_NN_OPS_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "bait/errors.hpp"
#include "bait/nn/matrix.hpp"
#include "bait/nn/params.hpp"
#include "bait/rng.hpp"
#include "bait/simd/kernels.hpp"

namespace bait::nn {

inline constexpr double kLogEpsilon = 1e-12;

template <typename T>
BasicMatrix<T> dense_forward(const BasicMatrix<T>& x, const BasicDenseLayerParams<T>& layer) {
  layer.validate();
  if (x.cols() != layer.in_dim()) {
    throw DimensionError("dense input " + x.shape() + " does not match weight " +
                         layer.weight.shape());
  }
  BasicMatrix<T> y(x.rows(), layer.out_dim());
  for (std::size_t r = 0; r < x.rows(); ++r) {
    const auto xr = x.row(r);
    auto yr = y.row(r);
    for (std::size_t o = 0; o < layer.out_dim(); ++o) {
      yr[o] = static_cast<T>(simd::dot(xr, layer.weight.row(o)) + layer.bias[o]);
    }
  }
  return y;
}

template <typename T>
BasicMatrix<T> relu(const BasicMatrix<T>& x) {
  BasicMatrix<T> y = x;
  for (T& v : y.values()) v = v > T{0} ? v : T{0};
  return y;
}

// Keep-mask for inverted dropout: 0 for dropped entries, 1/(1-p) for kept ones.
template <typename T>
std::vector<T> dropout_mask(std::size_t n, double p, Rng& rng) {
  if (!(p >= 0.0 && p < 1.0)) throw ParameterError("dropout probability must be in [0, 1)");
  const T keep = static_cast<T>(1.0 / (1.0 - p));
  std::vector<T> mask(n);
  for (T& m : mask) m = rng.uniform() < p ? T{0} : keep;
  return mask;
}

// Inverted dropout. At inference (or p == 0) the input is returned unchanged.
template <typename T>
BasicMatrix<T> dropout(const BasicMatrix<T>& x, double p, bool training, Rng& rng) {
  if (!(p >= 0.0 && p < 1.0)) throw ParameterError("dropout probability must be in [0, 1)");
  if (!training || p == 0.0) return x;
  const auto mask = dropout_mask<T>(x.size(), p, rng);
  BasicMatrix<T> y = x;
  auto v = y.values();
  for (std::size_t i = 0; i < v.size(); ++i) v[i] *= mask[i];
  return y;
}

template <typename T>
std::vector<T> softmax(std::span<const T> x) {
  std::vector<T> out(x.size());
  if (x.empty()) return out;
  const T peak = *std::max_element(x.begin(), x.end());
  double total = 0.0;
  std::vector<double> e(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    e[i] = std::exp(static_cast<double>(x[i]) - static_cast<double>(peak));
    total += e[i];
  }
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = static_cast<T>(e[i] / total);
  return out;
}

// Softmax restricted to entries with mask[i] set; masked entries get exactly 0.
template <typename T>
void masked_softmax_inplace(std::span<T> logits, const std::vector<bool>& mask) {
  double peak = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < logits.size(); ++i) {
    if (mask[i]) peak = std::max(peak, static_cast<double>(logits[i]));
  }
  if (!std::isfinite(peak)) throw DegenerateInputError("softmax over a fully masked set");
  double total = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    if (mask[i]) {
      const double e = std::exp(static_cast<double>(logits[i]) - peak);
      logits[i] = static_cast<T>(e);
      total += e;
    } else {
      logits[i] = T{0};
    }
  }
  for (std::size_t i = 0; i < logits.size(); ++i) {
    if (mask[i]) logits[i] = static_cast<T>(static_cast<double>(logits[i]) / total);
  }
}

// -weights[label] * ln(probs[label] + 1e-12)
template <typename T>
double weighted_cross_entropy(std::span<const T> probs, std::size_t label,
                              std::span<const T> weights) {
  if (label >= probs.size()) {
    throw IndexError("label " + std::to_string(label) + " out of range for " +
                     std::to_string(probs.size()) + " classes");
  }
  if (weights.size() != probs.size()) {
    throw DimensionError("class weight count " + std::to_string(weights.size()) +
                         " does not match class count " + std::to_string(probs.size()));
  }
  if (weights[label] < T{0}) throw ParameterError("class weights must be nonnegative");
  return -static_cast<double>(weights[label]) *
         std::log(static_cast<double>(probs[label]) + kLogEpsilon);
}

struct CosineResult {
  double value = 0.0;
  bool degenerate = false;  // a zero-norm input; value is the sentinel 0
};

template <typename T>
CosineResult cosine_similarity(std::span<const T> u, std::span<const T> v) {
  if (u.size() != v.size()) {
    throw DimensionError("cosine of vectors of length " + std::to_string(u.size()) + " and " +
                         std::to_string(v.size()));
  }
  const double uu = simd::dot(u, u);
  const double vv = simd::dot(v, v);
  if (uu == 0.0 || vv == 0.0) return {0.0, true};
  const double c = simd::dot(u, v) / (std::sqrt(uu) * std::sqrt(vv));
  return {std::clamp(c, -1.0, 1.0), false};
}

// Intermediates of one attention forward pass, kept for the backward pass.
//
// The per-head projections are never materialised for every key and value:
//   q_h . (Wk_h x_i + bk_h) = (Wk_h^T q_h) . x_i + q_h . bk_h
//   sum_i a_i (Wv_h y_i + bv_h) = Wv_h (sum_i a_i y_i) + bv_h     (sum_i a_i = 1)
// which turns O(L * H * d * dim) work into O(H * d * dim + L * H * dim).
template <typename T>
struct AttentionTrace {
  std::vector<T> queries;  // H*d_k, projected query per head
  std::vector<T> reduced;  // H*k_dim, Wk_h^T q_h
  std::vector<T> weights;  // H*L, softmax weights (0 at masked keys)
  std::vector<T> pooled;   // H*v_dim, sum_i a_{h,i} y_i
  std::vector<T> heads;    // H*d_v, concatenated head outputs
  std::vector<T> output;   // out_dim
};

template <typename T>
void check_attention_inputs(std::span<const T> query, const BasicMatrix<T>& keys,
                            const BasicMatrix<T>& values, const std::vector<bool>& mask,
                            const BasicAttentionParams<T>& p) {
  p.validate();
  if (query.size() != p.q_dim()) {
    throw DimensionError("attention query length " + std::to_string(query.size()) +
                         " vs query_proj " + p.query_proj.shape());
  }
  if (keys.cols() != p.k_dim()) {
    throw DimensionError("attention keys " + keys.shape() + " vs key_proj " + p.key_proj.shape());
  }
  if (values.cols() != p.v_dim()) {
    throw DimensionError("attention values " + values.shape() + " vs value_proj " +
                         p.value_proj.shape());
  }
  if (keys.rows() != values.rows() || mask.size() != keys.rows()) {
    throw DimensionError("attention keys " + keys.shape() + ", values " + values.shape() +
                         " and mask length " + std::to_string(mask.size()) + " disagree");
  }
  if (std::none_of(mask.begin(), mask.end(), [](bool m) { return m; })) {
    throw DegenerateInputError("attention over a fully masked key set");
  }
}

template <typename T>
AttentionTrace<T> attention_forward(std::span<const T> query, const BasicMatrix<T>& keys,
                                    const BasicMatrix<T>& values, const std::vector<bool>& mask,
                                    const BasicAttentionParams<T>& p) {
  check_attention_inputs(query, keys, values, mask, p);
  const std::size_t H = p.num_heads, dk = p.d_k, dv = p.d_v;
  const std::size_t L = keys.rows(), kd = p.k_dim(), vd = p.v_dim();
  const double scale = 1.0 / std::sqrt(static_cast<double>(dk));

  AttentionTrace<T> t;
  t.queries.resize(H * dk);
  for (std::size_t j = 0; j < H * dk; ++j) {
    t.queries[j] = static_cast<T>(simd::dot(query, p.query_proj.row(j)) + p.query_bias[j]);
  }
  t.reduced.assign(H * kd, T{0});
  t.weights.assign(H * L, T{0});
  t.pooled.assign(H * vd, T{0});
  t.heads.assign(H * dv, T{0});
  for (std::size_t h = 0; h < H; ++h) {
    std::span<T> red(t.reduced.data() + h * kd, kd);
    double bias_term = 0.0;
    for (std::size_t j = h * dk; j < (h + 1) * dk; ++j) {
      simd::axpy(t.queries[j], p.key_proj.row(j), red);
      bias_term += static_cast<double>(t.queries[j]) * p.key_bias[j];
    }
    std::span<T> w(t.weights.data() + h * L, L);
    for (std::size_t i = 0; i < L; ++i) {
      if (mask[i]) {
        w[i] = static_cast<T>((simd::dot(std::span<const T>(red), keys.row(i)) + bias_term) * scale);
      }
    }
    masked_softmax_inplace(w, mask);
    std::span<T> pool(t.pooled.data() + h * vd, vd);
    for (std::size_t i = 0; i < L; ++i) {
      if (mask[i] && w[i] != T{0}) simd::axpy(w[i], values.row(i), pool);
    }
    for (std::size_t j = h * dv; j < (h + 1) * dv; ++j) {
      t.heads[j] = static_cast<T>(simd::dot(std::span<const T>(pool), p.value_proj.row(j)) +
                                  p.value_bias[j]);
    }
  }
  t.output.resize(p.out_dim());
  for (std::size_t o = 0; o < p.out_dim(); ++o) {
    t.output[o] = static_cast<T>(simd::dot(std::span<const T>(t.heads), p.output_proj.row(o)) +
                                 p.output_bias[o]);
  }
  return t;
}

// Accumulates d(loss)/d(params) into `grads` given d(loss)/d(output).
// Queries, keys and values are treated as constants (frozen embeddings).
template <typename T>
void attention_backward(const AttentionTrace<T>& t, std::span<const T> query,
                        const BasicMatrix<T>& keys, const BasicMatrix<T>& values,
                        const std::vector<bool>& mask, const BasicAttentionParams<T>& p,
                        std::span<const T> grad_output, BasicAttentionParams<T>& grads) {
  const std::size_t H = p.num_heads, dk = p.d_k, dv = p.d_v;
  const std::size_t L = keys.rows(), kd = p.k_dim(), vd = p.v_dim();
  const double scale = 1.0 / std::sqrt(static_cast<double>(dk));

  std::vector<T> grad_heads(H * dv, T{0});
  for (std::size_t o = 0; o < p.out_dim(); ++o) {
    const T g = grad_output[o];
    if (g == T{0}) continue;
    grads.output_bias[o] += g;
    simd::axpy(g, std::span<const T>(t.heads), grads.output_proj.row(o));
    simd::axpy(g, p.output_proj.row(o), std::span<T>(grad_heads));
  }

  std::vector<T> grad_pool(vd);
  std::vector<T> grad_red(kd);
  std::vector<double> grad_w(L);
  for (std::size_t h = 0; h < H; ++h) {
    std::fill(grad_pool.begin(), grad_pool.end(), T{0});
    std::span<const T> pool(t.pooled.data() + h * vd, vd);
    for (std::size_t j = h * dv; j < (h + 1) * dv; ++j) {
      const T g = grad_heads[j];
      grads.value_bias[j] += g;
      simd::axpy(g, pool, grads.value_proj.row(j));
      simd::axpy(g, p.value_proj.row(j), std::span<T>(grad_pool));
    }
    // Softmax backward: dz_i = a_i (da_i - sum_j a_j da_j), zero at masked keys.
    std::span<const T> w(t.weights.data() + h * L, L);
    double weighted = 0.0;
    for (std::size_t i = 0; i < L; ++i) {
      grad_w[i] = mask[i] ? simd::dot(std::span<const T>(grad_pool), values.row(i)) : 0.0;
      weighted += static_cast<double>(w[i]) * grad_w[i];
    }
    std::fill(grad_red.begin(), grad_red.end(), T{0});
    double grad_bias_term = 0.0;
    for (std::size_t i = 0; i < L; ++i) {
      if (!mask[i]) continue;
      const double dz = static_cast<double>(w[i]) * (grad_w[i] - weighted) * scale;
      grad_bias_term += dz;
      simd::axpy(static_cast<T>(dz), keys.row(i), std::span<T>(grad_red));
    }
    for (std::size_t j = h * dk; j < (h + 1) * dk; ++j) {
      // reduced_h = sum_j q_j Wk_j  ->  dWk_j += q_j * d(reduced_h), dq_j += Wk_j . d(reduced_h)
      const T qj = t.queries[j];
      simd::axpy(qj, std::span<const T>(grad_red), grads.key_proj.row(j));
      grads.key_bias[j] += static_cast<T>(qj * grad_bias_term);
      const double dq = simd::dot(p.key_proj.row(j), std::span<const T>(grad_red)) +
                        grad_bias_term * p.key_bias[j];
      grads.query_bias[j] += static_cast<T>(dq);
      simd::axpy(static_cast<T>(dq), query, grads.query_proj.row(j));
    }
  }
}

template <typename T>
struct AttentionResult {
  std::vector<T> attended;              // out_dim
  std::vector<std::vector<T>> weights;  // one length-L distribution per head
};

template <typename T>
AttentionResult<T> multihead_attention(std::span<const T> query, const BasicMatrix<T>& keys,
                                       const BasicMatrix<T>& values,
                                       const std::vector<bool>& mask,
                                       const BasicAttentionParams<T>& params) {
  auto t = attention_forward(query, keys, values, mask, params);
  AttentionResult<T> r;
  r.attended = std::move(t.output);
  const std::size_t L = keys.rows();
  for (std::size_t h = 0; h < params.num_heads; ++h) {
    r.weights.emplace_back(t.weights.begin() + h * L, t.weights.begin() + (h + 1) * L);
  }
  return r;
}

}  // namespace bait::nn

#endif  // BAIT_NN_OPS_HPP_
