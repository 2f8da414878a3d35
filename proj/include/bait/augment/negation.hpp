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

#ifndef BAIT_AUGMENT_NEGATION_HPP_
#define BAIT_AUGMENT_NEGATION_HPP_

#include <optional>
#include <string>
#include <string_view>

#include "bait/augment/conllu.hpp"
#include "bait/augment/ngram_lm.hpp"
#include "bait/augment/wordnet.hpp"

namespace bait::augment {

enum class NegationMethod { kRemoveNot, kInsertNot, kAntonymSwap };

// "remove_not", "insert_not", "antonym_swap".
std::string_view method_name(NegationMethod method);

struct NegationResult {
  NegationMethod method = NegationMethod::kRemoveNot;
  std::string text;
};

// Tries, in order:
//   1. remove a "not"/"n't" that acts as a negation modifier ("neg", or
//      "advmod" with lemma "not");
//   2. insert "not" after the last auxiliary ("aux", "aux:pass") of a verbal
//      root;
//   3. swap the verbal root for its most fluent antonym, inflected like the
//      original.
// Returns nothing when no method applies or the result would be unchanged.
std::optional<NegationResult> negate_headline(const ParsedHeadline& parsed,
                                              const WordNetIndex& wordnet, const LmScorer& lm);

}  // namespace bait::augment

#endif  // BAIT_AUGMENT_NEGATION_HPP_
