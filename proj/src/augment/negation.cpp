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

#include "bait/augment/negation.hpp"

#include <cctype>
#include <vector>

#include "bait/augment/inflect.hpp"

namespace bait::augment {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool is_not_form(std::string_view form) {
  const std::string f = lower(form);
  return f == "not" || f == "n't" || f == "n’t";
}

bool is_negation_modifier(const DependencyToken& t) {
  if (!is_not_form(t.form)) return false;
  const std::string rel = lower(t.deprel);
  const std::string base = rel.substr(0, rel.find(':'));
  return base == "neg" || (base == "advmod" && lower(t.lemma) == "not");
}

bool is_auxiliary(const DependencyToken& t) {
  const std::string rel = lower(t.deprel);
  return rel == "aux" || rel == "aux:pass";
}

std::vector<std::string> forms_of(const ParsedHeadline& p) {
  std::vector<std::string> forms;
  for (const auto& t : p.tokens) forms.push_back(t.form);
  return forms;
}

// Host of a split contraction once its "n't" is gone: ca -> can, wo -> will.
std::string restore_host(const std::string& host) {
  const std::string h = lower(host);
  if (h == "ca") return match_case(host, "can");
  if (h == "wo") return match_case(host, "will");
  if (h == "sha") return match_case(host, "shall");
  return host;
}

std::optional<std::string> remove_not(const ParsedHeadline& p) {
  for (std::size_t i = 0; i < p.tokens.size(); ++i) {
    if (!is_negation_modifier(p.tokens[i])) continue;
    std::vector<std::string> forms = forms_of(p);
    const bool contracted = lower(forms[i]) != "not";
    forms.erase(forms.begin() + static_cast<std::ptrdiff_t>(i));
    if (contracted && i > 0) forms[i - 1] = restore_host(forms[i - 1]);
    if (i == 0 && !forms.empty()) forms[0] = match_case(p.tokens[0].form, forms[0]);
    return detokenize(forms);
  }
  return std::nullopt;
}

std::optional<std::string> insert_not(const ParsedHeadline& p, std::size_t root) {
  if (p.tokens[root].upos != "VERB") return std::nullopt;
  std::optional<std::size_t> last;
  for (std::size_t i = 0; i < p.tokens.size(); ++i) {
    if (p.tokens[i].head == root + 1 && is_auxiliary(p.tokens[i])) last = i;
  }
  if (!last) return std::nullopt;
  std::vector<std::string> forms = forms_of(p);
  forms.insert(forms.begin() + static_cast<std::ptrdiff_t>(*last + 1), "not");
  return detokenize(forms);
}

std::optional<std::string> antonym_swap(const ParsedHeadline& p, std::size_t root,
                                        const WordNetIndex& wordnet, const LmScorer& lm,
                                        const std::string& original) {
  const DependencyToken& verb = p.tokens[root];
  if (verb.upos != "VERB") return std::nullopt;
  const VerbForm form = detect_form(verb.form, verb.lemma);
  std::optional<std::string> best;
  double best_score = 0.0;
  for (const auto& antonym : wordnet.antonyms(verb.lemma)) {
    std::vector<std::string> forms = forms_of(p);
    forms[root] = match_case(verb.form, inflect(antonym, form));
    std::string candidate = detokenize(forms);
    if (candidate == original) continue;
    const double s = lm.score(candidate);
    if (!best || s > best_score) {
      best = std::move(candidate);
      best_score = s;
    }
  }
  return best;
}

}  // namespace

std::string_view method_name(NegationMethod method) {
  switch (method) {
    case NegationMethod::kRemoveNot:
      return "remove_not";
    case NegationMethod::kInsertNot:
      return "insert_not";
    case NegationMethod::kAntonymSwap:
      return "antonym_swap";
  }
  return "unknown";
}

std::optional<NegationResult> negate_headline(const ParsedHeadline& parsed,
                                              const WordNetIndex& wordnet, const LmScorer& lm) {
  if (parsed.tokens.empty()) return std::nullopt;
  const std::string original = detokenize(forms_of(parsed));
  auto accept = [&](NegationMethod m, std::optional<std::string> text) -> std::optional<NegationResult> {
    if (!text || *text == original) return std::nullopt;
    return NegationResult{m, std::move(*text)};
  };
  if (auto r = accept(NegationMethod::kRemoveNot, remove_not(parsed))) return r;
  const std::size_t root = parsed.root();
  if (auto r = accept(NegationMethod::kInsertNot, insert_not(parsed, root))) return r;
  return accept(NegationMethod::kAntonymSwap, antonym_swap(parsed, root, wordnet, lm, original));
}

}  // namespace bait::augment
