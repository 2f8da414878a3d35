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

#ifndef BAIT_MODELS_KIND_HPP_
#define BAIT_MODELS_KIND_HPP_

#include <cstdint>
#include <string>
#include <string_view>

namespace bait::models {

// Numeric values are persisted in checkpoint headers.
enum class ModelKind : std::uint8_t { kRelatedNet = 0, kTopKNet = 1, kAgreemNet = 2 };

std::string_view kind_name(ModelKind kind);
// ParameterError for an unknown name.
ModelKind parse_kind(std::string_view name);

}  // namespace bait::models

#endif  // BAIT_MODELS_KIND_HPP_
