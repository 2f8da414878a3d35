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

#ifndef BAIT_NN_TAPE_HPP_
#define BAIT_NN_TAPE_HPP_

#include <cmath>
#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "bait/errors.hpp"
#include "bait/nn/matrix.hpp"
#include "bait/nn/ops.hpp"
#include "bait/nn/params.hpp"
#include "bait/rng.hpp"
#include "bait/simd/kernels.hpp"

namespace bait::nn {

// Handle to a value recorded on a Tape.
struct Var {
  std::size_t id = 0;
};

// One sample's attention inputs. The referenced matrices must outlive the tape.
template <typename T>
struct AttentionInput {
  std::span<const T> query;
  const BasicMatrix<T>* keys = nullptr;
  const BasicMatrix<T>* values = nullptr;
  const std::vector<bool>* mask = nullptr;
};

// Records a forward pass over row-batched activations and replays it in
// reverse. Parameters are not tape nodes: layer ops hold a reference to the
// parameter struct and to a same-shaped gradient struct, and accumulate into
// the latter during backward(). Nodes are appended in evaluation order, so
// reverse creation order is a valid topological order.
template <typename T>
class BasicTape {
 public:
  Var constant(BasicMatrix<T> value) { return push(std::move(value), nullptr); }

  const BasicMatrix<T>& value(Var v) const { return nodes_[v.id].value; }
  const BasicMatrix<T>& grad(Var v) const { return nodes_[v.id].grad; }
  std::size_t size() const { return nodes_.size(); }

  Var dense(Var x, const BasicDenseLayerParams<T>& layer, BasicDenseLayerParams<T>* grads) {
    BasicMatrix<T> y = dense_forward(nodes_[x.id].value, layer);
    return push(std::move(y), [this, x, &layer, grads](std::size_t self) {
      const BasicMatrix<T>& in = nodes_[x.id].value;
      const BasicMatrix<T>& gy = nodes_[self].grad;
      BasicMatrix<T>* gx = needs_grad(x) ? &grad_of(x) : nullptr;
      for (std::size_t r = 0; r < in.rows(); ++r) {
        auto gyr = gy.row(r);
        for (std::size_t o = 0; o < layer.out_dim(); ++o) {
          const T g = gyr[o];
          if (g == T{0}) continue;
          if (grads) {
            grads->bias[o] += g;
            simd::axpy(g, in.row(r), grads->weight.row(o));
          }
          if (gx) simd::axpy(g, layer.weight.row(o), gx->row(r));
        }
      }
    });
  }

  Var relu(Var x) {
    BasicMatrix<T> y = nn::relu(nodes_[x.id].value);
    return push(std::move(y), [this, x](std::size_t self) {
      const auto in = nodes_[x.id].value.values();
      const auto gy = nodes_[self].grad.values();
      auto gx = grad_of(x).values();
      for (std::size_t i = 0; i < in.size(); ++i) {
        if (in[i] > T{0}) gx[i] += gy[i];
      }
    });
  }

  // Inverted dropout; the identity (no new node) when not training or p == 0.
  Var dropout(Var x, double p, bool training, Rng& rng) {
    if (!(p >= 0.0 && p < 1.0)) throw ParameterError("dropout probability must be in [0, 1)");
    if (!training || p == 0.0) return x;
    auto mask = dropout_mask<T>(nodes_[x.id].value.size(), p, rng);
    BasicMatrix<T> y = nodes_[x.id].value;
    auto yv = y.values();
    for (std::size_t i = 0; i < yv.size(); ++i) yv[i] *= mask[i];
    return push(std::move(y), [this, x, mask = std::move(mask)](std::size_t self) {
      const auto gy = nodes_[self].grad.values();
      auto gx = grad_of(x).values();
      for (std::size_t i = 0; i < gy.size(); ++i) gx[i] += gy[i] * mask[i];
    });
  }

  Var concat_cols(const std::vector<Var>& parts) {
    if (parts.empty()) throw DimensionError("concat of nothing");
    const std::size_t rows = nodes_[parts.front().id].value.rows();
    std::size_t cols = 0;
    for (Var v : parts) {
      const auto& m = nodes_[v.id].value;
      if (m.rows() != rows) {
        throw DimensionError("concat of " + nodes_[parts.front().id].value.shape() + " and " +
                             m.shape());
      }
      cols += m.cols();
    }
    BasicMatrix<T> y(rows, cols);
    std::size_t offset = 0;
    for (Var v : parts) {
      const auto& m = nodes_[v.id].value;
      for (std::size_t r = 0; r < rows; ++r) {
        std::copy(m.row(r).begin(), m.row(r).end(), y.row(r).begin() + offset);
      }
      offset += m.cols();
    }
    return push(std::move(y), [this, parts](std::size_t self) {
      const BasicMatrix<T>& gy = nodes_[self].grad;
      std::size_t off = 0;
      for (Var v : parts) {
        if (!needs_grad(v)) {
          off += nodes_[v.id].value.cols();
          continue;
        }
        BasicMatrix<T>& gx = grad_of(v);
        for (std::size_t r = 0; r < gy.rows(); ++r) {
          auto src = gy.row(r).subspan(off, gx.cols());
          auto dst = gx.row(r);
          for (std::size_t c = 0; c < dst.size(); ++c) dst[c] += src[c];
        }
        off += gx.cols();
      }
    });
  }

  // Multi-head attention per batch row; output is (batch x out_dim).
  Var attention(std::vector<AttentionInput<T>> batch, const BasicAttentionParams<T>& params,
                BasicAttentionParams<T>* grads) {
    BasicMatrix<T> y(batch.size(), params.out_dim());
    std::vector<AttentionTrace<T>> traces;
    traces.reserve(batch.size());
    for (std::size_t b = 0; b < batch.size(); ++b) {
      const auto& in = batch[b];
      traces.push_back(attention_forward(in.query, *in.keys, *in.values, *in.mask, params));
      std::copy(traces.back().output.begin(), traces.back().output.end(), y.row(b).begin());
    }
    return push(std::move(y), [this, batch = std::move(batch), traces = std::move(traces),
                               &params, grads](std::size_t self) {
      if (!grads) return;
      const BasicMatrix<T>& gy = nodes_[self].grad;
      for (std::size_t b = 0; b < batch.size(); ++b) {
        const auto& in = batch[b];
        attention_backward(traces[b], in.query, *in.keys, *in.values, *in.mask, params, gy.row(b),
                           *grads);
      }
    });
  }

  // Row-wise cosine between x (recorded) and a constant matrix of equal shape.
  // Zero-norm rows yield 0 with zero gradient.
  Var cosine_rows(Var x, const BasicMatrix<T>& other) {
    const BasicMatrix<T>& a = nodes_[x.id].value;
    if (a.rows() != other.rows() || a.cols() != other.cols()) {
      throw DimensionError("cosine of " + a.shape() + " and " + other.shape());
    }
    BasicMatrix<T> y(a.rows(), 1);
    for (std::size_t r = 0; r < a.rows(); ++r) {
      y(r, 0) = static_cast<T>(cosine_similarity(a.row(r), other.row(r)).value);
    }
    return push(std::move(y), [this, x, &other](std::size_t self) {
      const BasicMatrix<T>& a = nodes_[x.id].value;
      const BasicMatrix<T>& gy = nodes_[self].grad;
      const BasicMatrix<T>& cosv = nodes_[self].value;
      BasicMatrix<T>& gx = grad_of(x);
      for (std::size_t r = 0; r < a.rows(); ++r) {
        const double aa = simd::dot(a.row(r), a.row(r));
        const double cc = simd::dot(other.row(r), other.row(r));
        if (aa == 0.0 || cc == 0.0) continue;
        const double na = std::sqrt(aa), nc = std::sqrt(cc);
        const double g = gy(r, 0);
        // d cos / d a = c / (|a||c|) - cos * a / |a|^2
        simd::axpy(static_cast<T>(g / (na * nc)), other.row(r), gx.row(r));
        simd::axpy(static_cast<T>(-g * cosv(r, 0) / aa), a.row(r), gx.row(r));
      }
    });
  }

  Var softmax_rows(Var x) {
    const BasicMatrix<T>& a = nodes_[x.id].value;
    BasicMatrix<T> y(a.rows(), a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
      const auto s = softmax(a.row(r));
      std::copy(s.begin(), s.end(), y.row(r).begin());
    }
    return push(std::move(y), [this, x](std::size_t self) {
      const BasicMatrix<T>& yv = nodes_[self].value;
      const BasicMatrix<T>& gy = nodes_[self].grad;
      BasicMatrix<T>& gx = grad_of(x);
      for (std::size_t r = 0; r < yv.rows(); ++r) {
        const double s = simd::dot(yv.row(r), gy.row(r));
        for (std::size_t c = 0; c < yv.cols(); ++c) {
          gx(r, c) += static_cast<T>(yv(r, c) * (gy(r, c) - s));
        }
      }
    });
  }

  // Mean over rows of -w[label] * ln(p[label] + eps). Result is (1 x 1).
  Var weighted_nll(Var probs, std::vector<std::size_t> labels, std::vector<T> class_weights) {
    const BasicMatrix<T>& p = nodes_[probs.id].value;
    if (labels.size() != p.rows()) {
      throw DimensionError("label count " + std::to_string(labels.size()) + " vs batch " +
                           p.shape());
    }
    if (p.rows() == 0) throw ParameterError("loss over an empty batch");
    double total = 0.0;
    for (std::size_t r = 0; r < p.rows(); ++r) {
      total += weighted_cross_entropy(p.row(r), labels[r], std::span<const T>(class_weights));
    }
    BasicMatrix<T> y(1, 1, static_cast<T>(total / static_cast<double>(p.rows())));
    return push(std::move(y), [this, probs, labels = std::move(labels),
                               w = std::move(class_weights)](std::size_t self) {
      const BasicMatrix<T>& p = nodes_[probs.id].value;
      BasicMatrix<T>& gp = grad_of(probs);
      const double g = nodes_[self].grad(0, 0) / static_cast<double>(p.rows());
      for (std::size_t r = 0; r < p.rows(); ++r) {
        const std::size_t l = labels[r];
        gp(r, l) += static_cast<T>(-g * w[l] / (static_cast<double>(p(r, l)) + kLogEpsilon));
      }
    });
  }

  // Reverse pass from a (1 x 1) node.
  void backward(Var loss) {
    const BasicMatrix<T>& lv = nodes_[loss.id].value;
    if (lv.rows() != 1 || lv.cols() != 1) {
      throw ContractError("backward needs a scalar loss, got " + lv.shape());
    }
    grad_of(loss)(0, 0) = T{1};
    for (std::size_t i = loss.id + 1; i-- > 0;) {
      Node& n = nodes_[i];
      if (n.backward && !n.grad.empty()) n.backward(i);
    }
  }

  // Keeps `value` alive as long as the tape; for inputs that ops reference by
  // pointer (attention keys/values converted to another precision).
  template <typename X>
  const X& hold(X value) {
    auto p = std::make_shared<X>(std::move(value));
    const X& ref = *p;
    held_.push_back(std::move(p));
    return ref;
  }

  // Lets a constant input receive a gradient (used by tests).
  void track_gradient(Var v) { nodes_[v.id].wants_grad = true; }

 private:
  struct Node {
    BasicMatrix<T> value;
    BasicMatrix<T> grad;
    std::function<void(std::size_t)> backward;
    bool wants_grad = false;
  };

  Var push(BasicMatrix<T> value, std::function<void(std::size_t)> backward) {
    nodes_.push_back(Node{std::move(value), {}, std::move(backward)});
    return Var{nodes_.size() - 1};
  }

  bool needs_grad(Var v) const {
    const Node& n = nodes_[v.id];
    return static_cast<bool>(n.backward) || n.wants_grad;
  }

  BasicMatrix<T>& grad_of(Var v) {
    Node& n = nodes_[v.id];
    if (n.grad.empty() && !n.value.empty()) n.grad = BasicMatrix<T>(n.value.rows(), n.value.cols());
    return n.grad;
  }

  std::vector<Node> nodes_;
  std::vector<std::shared_ptr<void>> held_;
};

using Tape = BasicTape<float>;

}  // namespace bait::nn

#endif  // BAIT_NN_TAPE_HPP_
