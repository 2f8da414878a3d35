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

#ifndef BAIT_AUGMENT_CLASS_WEIGHTS_HPP_
#define BAIT_AUGMENT_CLASS_WEIGHTS_HPP_

#include <cstddef>
#include <span>
#include <vector>

namespace bait::augment {

// Balanced weights w_c = N / (C * n_c), so that sum_c n_c * w_c = N.
// ParameterError for an empty vector or a zero count.
std::vector<double> balanced_class_weights(std::span<const std::size_t> counts);

}  // namespace bait::augment

#endif  // BAIT_AUGMENT_CLASS_WEIGHTS_HPP_
