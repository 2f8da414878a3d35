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

#ifndef BAIT_NN_ADAM_HPP_
#define BAIT_NN_ADAM_HPP_

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "bait/errors.hpp"

namespace bait::nn {

inline constexpr double kAdamBeta1 = 0.9;
inline constexpr double kAdamBeta2 = 0.999;
inline constexpr double kAdamEpsilon = 1e-8;

// First/second moment accumulators, one buffer per parameter tensor in the
// order the parameter struct enumerates them.
template <typename T>
struct BasicOptimizerState {
  std::vector<std::vector<T>> first_moment;
  std::vector<std::vector<T>> second_moment;
  std::uint64_t step = 0;
};

using OptimizerState = BasicOptimizerState<float>;

// Adam with bias correction. `params` and `grads` are parameter structs with
// for_each_tensor(); grads must mirror params tensor-for-tensor.
template <typename T, typename Params>
void adam_step(Params& params, const Params& grads, BasicOptimizerState<T>& state, double lr) {
  if (!(lr > 0.0)) throw ParameterError("learning rate must be positive");
  std::vector<std::span<T>> ps;
  std::vector<std::span<const T>> gs;
  params.for_each_tensor([&](std::span<T> t) { ps.push_back(t); });
  grads.for_each_tensor([&](std::span<const T> t) { gs.push_back(t); });
  if (ps.size() != gs.size()) throw DimensionError("gradient tensors do not mirror parameters");
  if (state.first_moment.empty()) {
    for (const auto& p : ps) {
      state.first_moment.emplace_back(p.size(), T{0});
      state.second_moment.emplace_back(p.size(), T{0});
    }
  }
  if (state.first_moment.size() != ps.size()) {
    throw DimensionError("optimizer state does not mirror parameters");
  }
  ++state.step;
  const double t = static_cast<double>(state.step);
  const double correction1 = 1.0 - std::pow(kAdamBeta1, t);
  const double correction2 = 1.0 - std::pow(kAdamBeta2, t);
  const double step_size = lr / correction1;
  for (std::size_t k = 0; k < ps.size(); ++k) {
    auto p = ps[k];
    auto g = gs[k];
    auto& m = state.first_moment[k];
    auto& v = state.second_moment[k];
    if (p.size() != g.size() || m.size() != p.size()) {
      throw DimensionError("gradient tensor " + std::to_string(k) + " does not mirror its parameter");
    }
    for (std::size_t i = 0; i < p.size(); ++i) {
      const double gi = g[i];
      const double mi = kAdamBeta1 * m[i] + (1.0 - kAdamBeta1) * gi;
      const double vi = kAdamBeta2 * v[i] + (1.0 - kAdamBeta2) * gi * gi;
      m[i] = static_cast<T>(mi);
      v[i] = static_cast<T>(vi);
      const double denom = std::sqrt(vi / correction2) + kAdamEpsilon;
      p[i] = static_cast<T>(p[i] - step_size * mi / denom);
    }
  }
}

}  // namespace bait::nn

#endif  // BAIT_NN_ADAM_HPP_
