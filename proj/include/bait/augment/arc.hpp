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

#ifndef BAIT_AUGMENT_ARC_HPP_
#define BAIT_AUGMENT_ARC_HPP_

#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "bait/data/corpus.hpp"

namespace bait::augment {

enum class ArcSupport { kClaim, kOpposing, kNeither };

struct ArcRecord {
  std::string topic;
  std::string post;
  std::string claim;
  std::string opposing_claim;
  ArcSupport support = ArcSupport::kNeither;
};

// CSV with header topic,post,claim,opposing_claim,support where support is
// claim, opposing or neither. ParseError (with line) for a missing column,
// an empty field or an unknown support value.
std::vector<ArcRecord> read_arc_csv(std::istream& in, const std::string& name);
std::vector<ArcRecord> load_arc_csv(const std::filesystem::path& path);

inline constexpr double kArcUnrelatedShare = 0.75;

struct ArcAdaptation {
  std::vector<data::SamplePair> samples;
  std::map<std::uint32_t, std::string> bodies;  // post text by assigned Body ID
};

// Each record becomes (claim, post) with AGR / DSG / DSC by its support
// label. Unrelated samples pair posts with claims from other topics, drawn
// with `seed`, until they make up `unrelated_share` of the output (fewer
// if the distinct cross-topic pairs run out). Distinct posts get Body IDs
// counting up from `first_body_id`; claims are interned into `headlines`.
ArcAdaptation adapt_arc(std::span<const ArcRecord> records, data::HeadlineTable& headlines,
                        std::uint32_t first_body_id, std::uint64_t seed,
                        double unrelated_share = kArcUnrelatedShare);

}  // namespace bait::augment

#endif  // BAIT_AUGMENT_ARC_HPP_
