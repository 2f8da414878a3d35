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

#ifndef BAIT_AUGMENT_INFLECT_HPP_
#define BAIT_AUGMENT_INFLECT_HPP_

#include <string>
#include <string_view>

namespace bait::augment {

enum class VerbForm { kBase, kThirdSingular, kPast, kPastParticiple, kGerund };

// Which form `surface` is of `lemma`, by irregular table then suffix.
VerbForm detect_form(std::string_view surface, std::string_view lemma);

// Suffix rules with an irregular-verb table. Multiword lemmas
// ("close_up") inflect their first word and join with spaces.
std::string inflect(std::string_view lemma, VerbForm form);

// `word` with the capitalisation pattern of `model` (lower, Capitalised or
// UPPER).
std::string match_case(std::string_view model, std::string word);

}  // namespace bait::augment

#endif  // BAIT_AUGMENT_INFLECT_HPP_
