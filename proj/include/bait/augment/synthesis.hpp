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

#ifndef BAIT_AUGMENT_SYNTHESIS_HPP_
#define BAIT_AUGMENT_SYNTHESIS_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <ostream>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "bait/augment/conllu.hpp"
#include "bait/augment/negation.hpp"
#include "bait/data/corpus.hpp"

namespace bait::augment {

// AGR <-> DSG; ContractError for any other stance.
data::Stance flip_label(data::Stance s);

struct SynthesisOptions {
  bool flip_agree = true;      // AGR samples become DSG
  bool flip_disagree = false;  // DSG samples become AGR
};

struct SynthesisLogEntry {
  std::uint32_t headline_id = 0;      // source headline
  std::uint32_t new_headline_id = 0;  // negated headline
  NegationMethod method = NegationMethod::kRemoveNot;
  std::string original;
  std::string negated;
};

struct SynthesisResult {
  std::vector<data::SamplePair> samples;  // new samples only
  std::vector<SynthesisLogEntry> log;     // one entry per negated headline
  std::array<std::size_t, 3> method_counts{};
  std::size_t missing_parses = 0;
  std::size_t not_negatable = 0;
};

// Emits, for every eligible sample whose headline negates, a sample with the
// negated headline (interned into `headlines`), the same body and the flipped
// label. Each headline is negated once. Samples without a parse are skipped
// with a warning.
SynthesisResult synthesize_flipped_samples(
    std::span<const data::SamplePair> samples,
    const std::unordered_map<std::uint32_t, ParsedHeadline>& parses,
    data::HeadlineTable& headlines, const WordNetIndex& wordnet, const LmScorer& lm,
    const SynthesisOptions& options = {});

// JSON lines {headline_id, new_headline_id, method, original, negated}.
void write_synthesis_log(std::ostream& out, std::span<const SynthesisLogEntry> log);

}  // namespace bait::augment

#endif  // BAIT_AUGMENT_SYNTHESIS_HPP_
