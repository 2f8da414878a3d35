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

#ifndef BAIT_MODELS_MLP_HPP_
#define BAIT_MODELS_MLP_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "bait/nn/params.hpp"
#include "bait/nn/tape.hpp"
#include "bait/rng.hpp"

namespace bait::models {

enum class Mode { kInference, kTraining };

// Stack of dense layers: ReLU + dropout after every hidden layer, softmax after
// the last.
template <typename T>
struct BasicMlp {
  std::vector<nn::BasicDenseLayerParams<T>> layers;

  // widths = {input, hidden..., classes}
  static BasicMlp with_widths(const std::vector<std::size_t>& widths) {
    BasicMlp m;
    for (std::size_t i = 0; i + 1 < widths.size(); ++i) {
      m.layers.emplace_back(widths[i], widths[i + 1]);
    }
    return m;
  }

  std::size_t parameter_count() const {
    std::size_t n = 0;
    for (const auto& l : layers) n += l.parameter_count();
    return n;
  }

  void init(Rng& rng) {
    for (auto& l : layers) l.init(rng);
  }
  void zero() {
    for (auto& l : layers) l.zero();
  }

  template <typename F>
  void for_each_tensor(F&& f) {
    for (auto& l : layers) l.for_each_tensor(f);
  }
  template <typename F>
  void for_each_tensor(F&& f) const {
    for (const auto& l : layers) l.for_each_tensor(f);
  }

  template <typename U>
  BasicMlp<U> cast() const {
    BasicMlp<U> out;
    for (const auto& l : layers) out.layers.push_back(l.template cast<U>());
    return out;
  }

  // Returns the (batch x classes) probability node. Hidden pre-activations are
  // appended to `preactivations` when given.
  nn::Var forward(nn::BasicTape<T>& tape, nn::Var x, BasicMlp* grads, double dropout, Mode mode,
                  Rng& rng, std::vector<nn::Var>* preactivations = nullptr) const {
    const bool training = mode == Mode::kTraining;
    nn::Var h = x;
    for (std::size_t i = 0; i < layers.size(); ++i) {
      nn::Var z = tape.dense(h, layers[i], grads ? &grads->layers[i] : nullptr);
      if (i + 1 == layers.size()) return tape.softmax_rows(z);
      if (preactivations) preactivations->push_back(z);
      h = tape.dropout(tape.relu(z), dropout, training, rng);
    }
    return h;
  }
};

}  // namespace bait::models

#endif  // BAIT_MODELS_MLP_HPP_
