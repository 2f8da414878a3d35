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

#ifndef BAIT_AUGMENT_CONLLU_HPP_
#define BAIT_AUGMENT_CONLLU_HPP_

#include <cstdint>
#include <filesystem>
#include <istream>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace bait::augment {

struct DependencyToken {
  std::size_t index = 0;  // 1-based
  std::string form;
  std::string lemma;
  std::string upos;
  std::size_t head = 0;  // 0 = root
  std::string deprel;
};

struct ParsedHeadline {
  std::uint32_t headline_id = 0;
  std::vector<DependencyToken> tokens;
  std::string text;

  // 0-based position of the root token.
  std::size_t root() const;
};

// Reads CoNLL-U: ten tab-separated columns, blank lines between sentences.
// "# headline_id = N" and "# text = ..." comments are honoured; a sentence
// without an id takes its 0-based position. Multiword ranges and empty nodes
// are skipped. ParseError (with line) for a wrong column count or non-numeric
// head; IntegrityError for a sentence without exactly one root or with an
// out-of-range head.
std::vector<ParsedHeadline> parse_conllu(std::istream& in, const std::string& name);
std::vector<ParsedHeadline> parse_conllu_file(const std::filesystem::path& path);

std::unordered_map<std::uint32_t, ParsedHeadline> index_by_headline(
    std::vector<ParsedHeadline> parses);

// Joins tokens with single spaces, attaching closing punctuation and clitics
// to the previous token and opening brackets to the next.
std::string detokenize(std::span<const std::string> forms);

}  // namespace bait::augment

#endif  // BAIT_AUGMENT_CONLLU_HPP_
