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

#include "bait/models/kind.hpp"

#include "bait/errors.hpp"

namespace bait::models {

std::string_view kind_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::kRelatedNet:
      return "relatednet";
    case ModelKind::kTopKNet:
      return "topknet";
    case ModelKind::kAgreemNet:
      return "agreemnet";
  }
  return "unknown";
}

ModelKind parse_kind(std::string_view name) {
  for (auto kind : {ModelKind::kRelatedNet, ModelKind::kTopKNet, ModelKind::kAgreemNet}) {
    if (kind_name(kind) == name) return kind;
  }
  throw ParameterError("unknown model kind '" + std::string(name) +
                       "' (expected relatednet, topknet or agreemnet)");
}

}  // namespace bait::models
