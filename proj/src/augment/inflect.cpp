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

#include "bait/augment/inflect.hpp"

#include <algorithm>
#include <cctype>

namespace bait::augment {

namespace {

struct Irregular {
  const char* base;
  const char* past;
  const char* participle;
};

constexpr Irregular kIrregular[] = {
    {"arise", "arose", "arisen"},   {"awake", "awoke", "awoken"},   {"be", "was", "been"},
    {"bear", "bore", "borne"},      {"beat", "beat", "beaten"},     {"become", "became", "become"},
    {"begin", "began", "begun"},    {"bend", "bent", "bent"},       {"bet", "bet", "bet"},
    {"bind", "bound", "bound"},     {"bite", "bit", "bitten"},      {"bleed", "bled", "bled"},
    {"blow", "blew", "blown"},      {"break", "broke", "broken"},   {"bring", "brought", "brought"},
    {"build", "built", "built"},    {"burst", "burst", "burst"},    {"buy", "bought", "bought"},
    {"catch", "caught", "caught"},  {"choose", "chose", "chosen"},  {"come", "came", "come"},
    {"cost", "cost", "cost"},       {"cut", "cut", "cut"},          {"deal", "dealt", "dealt"},
    {"dig", "dug", "dug"},          {"do", "did", "done"},          {"draw", "drew", "drawn"},
    {"drink", "drank", "drunk"},    {"drive", "drove", "driven"},   {"eat", "ate", "eaten"},
    {"fall", "fell", "fallen"},     {"feed", "fed", "fed"},         {"feel", "felt", "felt"},
    {"fight", "fought", "fought"},  {"find", "found", "found"},     {"flee", "fled", "fled"},
    {"fly", "flew", "flown"},       {"forbid", "forbade", "forbidden"},
    {"forget", "forgot", "forgotten"}, {"forgive", "forgave", "forgiven"},
    {"freeze", "froze", "frozen"},  {"get", "got", "gotten"},       {"give", "gave", "given"},
    {"go", "went", "gone"},         {"grow", "grew", "grown"},      {"hang", "hung", "hung"},
    {"have", "had", "had"},         {"hear", "heard", "heard"},     {"hide", "hid", "hidden"},
    {"hit", "hit", "hit"},          {"hold", "held", "held"},       {"hurt", "hurt", "hurt"},
    {"keep", "kept", "kept"},       {"know", "knew", "known"},      {"lay", "laid", "laid"},
    {"lead", "led", "led"},         {"leave", "left", "left"},      {"lend", "lent", "lent"},
    {"let", "let", "let"},          {"lie", "lay", "lain"},         {"lose", "lost", "lost"},
    {"make", "made", "made"},       {"mean", "meant", "meant"},     {"meet", "met", "met"},
    {"pay", "paid", "paid"},        {"put", "put", "put"},          {"quit", "quit", "quit"},
    {"read", "read", "read"},       {"ride", "rode", "ridden"},     {"ring", "rang", "rung"},
    {"rise", "rose", "risen"},      {"run", "ran", "run"},          {"say", "said", "said"},
    {"see", "saw", "seen"},         {"seek", "sought", "sought"},   {"sell", "sold", "sold"},
    {"send", "sent", "sent"},       {"set", "set", "set"},          {"shake", "shook", "shaken"},
    {"shoot", "shot", "shot"},      {"shut", "shut", "shut"},       {"sing", "sang", "sung"},
    {"sink", "sank", "sunk"},       {"sit", "sat", "sat"},          {"sleep", "slept", "slept"},
    {"speak", "spoke", "spoken"},   {"spend", "spent", "spent"},    {"stand", "stood", "stood"},
    {"steal", "stole", "stolen"},   {"strike", "struck", "struck"}, {"swim", "swam", "swum"},
    {"take", "took", "taken"},      {"teach", "taught", "taught"},  {"tell", "told", "told"},
    {"think", "thought", "thought"}, {"throw", "threw", "thrown"},
    {"understand", "understood", "understood"}, {"win", "won", "won"},
    {"write", "wrote", "written"},
};

const Irregular* irregular(std::string_view base) {
  for (const auto& v : kIrregular) {
    if (base == v.base) return &v;
  }
  return nullptr;
}

bool is_vowel(char c) { return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u'; }

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

// Short consonant-vowel-consonant verbs double their final consonant
// (stop -> stopped); one vowel group only, so "open" stays "opened".
bool doubles_final(std::string_view w) {
  if (w.size() < 3) return false;
  const char c = w.back(), v = w[w.size() - 2], p = w[w.size() - 3];
  if (is_vowel(c) || c == 'w' || c == 'x' || c == 'y' || !is_vowel(v) || is_vowel(p)) return false;
  std::size_t groups = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (is_vowel(w[i]) && (i == 0 || !is_vowel(w[i - 1]))) ++groups;
  }
  return groups == 1;
}

std::string regular(std::string_view w, VerbForm form) {
  std::string s(w);
  const bool consonant_y = s.size() >= 2 && s.back() == 'y' && !is_vowel(s[s.size() - 2]);
  switch (form) {
    case VerbForm::kBase:
      return s;
    case VerbForm::kThirdSingular:
      if (consonant_y) return s.substr(0, s.size() - 1) + "ies";
      if (ends_with(s, "s") || ends_with(s, "x") || ends_with(s, "z") || ends_with(s, "ch") ||
          ends_with(s, "sh") || ends_with(s, "o")) {
        return s + "es";
      }
      return s + "s";
    case VerbForm::kPast:
    case VerbForm::kPastParticiple:
      if (ends_with(s, "e")) return s + "d";
      if (consonant_y) return s.substr(0, s.size() - 1) + "ied";
      if (doubles_final(s)) return s + s.back() + "ed";
      return s + "ed";
    case VerbForm::kGerund:
      if (ends_with(s, "ie")) return s.substr(0, s.size() - 2) + "ying";
      if (ends_with(s, "e") && !ends_with(s, "ee") && !ends_with(s, "ye") && !ends_with(s, "oe") &&
          s.size() > 2) {
        return s.substr(0, s.size() - 1) + "ing";
      }
      if (doubles_final(s)) return s + s.back() + "ing";
      return s + "ing";
  }
  return s;
}

std::string inflect_word(std::string_view base, VerbForm form) {
  if (const Irregular* irr = irregular(base)) {
    if (base == "be") {
      switch (form) {
        case VerbForm::kThirdSingular:
          return "is";
        case VerbForm::kGerund:
          return "being";
        default:
          break;
      }
    }
    if (base == "have" && form == VerbForm::kThirdSingular) return "has";
    if (form == VerbForm::kPast) return irr->past;
    if (form == VerbForm::kPastParticiple) return irr->participle;
  }
  return regular(base, form);
}

}  // namespace

VerbForm detect_form(std::string_view surface, std::string_view lemma) {
  const std::string s = lower(surface);
  const std::string l = lower(lemma);
  if (s == l) return VerbForm::kBase;
  if (const Irregular* irr = irregular(l)) {
    if (s == irr->past) return VerbForm::kPast;
    if (s == irr->participle) return VerbForm::kPastParticiple;
  }
  for (auto form : {VerbForm::kThirdSingular, VerbForm::kPast, VerbForm::kGerund}) {
    if (s == inflect_word(l, form)) return form;
  }
  if (ends_with(s, "ing")) return VerbForm::kGerund;
  if (ends_with(s, "ed")) return VerbForm::kPast;
  if (ends_with(s, "en")) return VerbForm::kPastParticiple;
  if (ends_with(s, "s")) return VerbForm::kThirdSingular;
  return VerbForm::kBase;
}

std::string inflect(std::string_view lemma, VerbForm form) {
  std::string base = lower(lemma);
  std::replace(base.begin(), base.end(), '_', ' ');
  const auto space = base.find(' ');
  if (space == std::string::npos) return inflect_word(base, form);
  return inflect_word(base.substr(0, space), form) + base.substr(space);
}

std::string match_case(std::string_view model, std::string word) {
  const bool has_alpha = std::any_of(model.begin(), model.end(), [](char c) {
    return std::isalpha(static_cast<unsigned char>(c));
  });
  if (!has_alpha || word.empty()) return word;
  const bool all_upper = model.size() > 1 && std::none_of(model.begin(), model.end(), [](char c) {
    return std::islower(static_cast<unsigned char>(c));
  });
  if (all_upper) {
    for (auto& c : word) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  } else if (std::isupper(static_cast<unsigned char>(model.front()))) {
    word[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(word[0])));
  }
  return word;
}

}  // namespace bait::augment
