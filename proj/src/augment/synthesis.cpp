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

#include "bait/augment/synthesis.hpp"

#include <optional>

#include <json.hpp>

#include "bait/errors.hpp"
#include "bait/log.hpp"

namespace bait::augment {

data::Stance flip_label(data::Stance s) {
  switch (s) {
    case data::Stance::kAgree:
      return data::Stance::kDisagree;
    case data::Stance::kDisagree:
      return data::Stance::kAgree;
    default:
      throw ContractError("only agree and disagree labels can be flipped, got " +
                          std::string(data::stance_name(s)));
  }
}

SynthesisResult synthesize_flipped_samples(
    std::span<const data::SamplePair> samples,
    const std::unordered_map<std::uint32_t, ParsedHeadline>& parses,
    data::HeadlineTable& headlines, const WordNetIndex& wordnet, const LmScorer& lm,
    const SynthesisOptions& options) {
  SynthesisResult result;
  // Per source headline: the new headline id, or nothing if it cannot be
  // negated (or has no parse).
  std::unordered_map<std::uint32_t, std::optional<std::uint32_t>> negated;
  for (const auto& s : samples) {
    const bool eligible = (s.stance == data::Stance::kAgree && options.flip_agree) ||
                          (s.stance == data::Stance::kDisagree && options.flip_disagree);
    if (!eligible) continue;
    auto cached = negated.find(s.headline_id);
    if (cached == negated.end()) {
      std::optional<std::uint32_t> id;
      const auto parse = parses.find(s.headline_id);
      if (parse == parses.end()) {
        ++result.missing_parses;
        log::warn("no dependency parse for headline ", s.headline_id, "; skipping its samples");
      } else if (auto r = negate_headline(parse->second, wordnet, lm)) {
        id = headlines.intern(r->text);
        ++result.method_counts[static_cast<std::size_t>(r->method)];
        result.log.push_back({s.headline_id, *id, r->method,
                              s.headline_id < headlines.size() ? headlines.text(s.headline_id)
                                                               : parse->second.text,
                              r->text});
      } else {
        ++result.not_negatable;
      }
      cached = negated.emplace(s.headline_id, id).first;
    }
    if (cached->second) result.samples.push_back({*cached->second, s.body_id, flip_label(s.stance)});
  }
  log::info("synthesized ", result.samples.size(), " samples: ", result.method_counts[0],
            " remove_not, ", result.method_counts[1], " insert_not, ", result.method_counts[2],
            " antonym_swap headlines");
  return result;
}

void write_synthesis_log(std::ostream& out, std::span<const SynthesisLogEntry> log) {
  for (const auto& e : log) {
    nlohmann::ordered_json j;
    j["headline_id"] = e.headline_id;
    j["new_headline_id"] = e.new_headline_id;
    j["method"] = std::string(method_name(e.method));
    j["original"] = e.original;
    j["negated"] = e.negated;
    out << j.dump() << '\n';
  }
}

}  // namespace bait::augment
