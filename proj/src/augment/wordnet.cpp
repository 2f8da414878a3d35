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

#include "bait/augment/wordnet.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

#include "bait/data/csv.hpp"
#include "bait/errors.hpp"

namespace bait::augment {

namespace {

std::string lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

// Drops an adjective marker such as "(p)" from a data-file word.
std::string clean_word(const std::string& w) {
  const auto paren = w.find('(');
  return lower(paren == std::string::npos ? w : w.substr(0, paren));
}

template <typename N>
N number(const std::string& tok, int base, const std::string& what, std::size_t line,
         const std::string& name) {
  N value{};
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value, base);
  if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError(name + ": malformed " + what + " '" + tok + "'", line);
  }
  return value;
}

std::vector<std::string> words_of(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> out;
  std::string w;
  while (is >> w) out.push_back(w);
  return out;
}

bool is_license_line(const std::string& line) { return !line.empty() && line[0] == ' '; }

}  // namespace

void WordNetIndex::add_synset(std::uint32_t offset, Synset synset) {
  synsets_[offset] = std::move(synset);
}

void WordNetIndex::add_lemma(const std::string& lemma, std::vector<std::uint32_t> offsets) {
  index_[lower(lemma)] = std::move(offsets);
}

void WordNetIndex::finalize() {
  antonyms_.clear();
  for (const auto& [lemma, offsets] : index_) {
    for (auto off : offsets) {
      if (!synsets_.count(off)) {
        throw ParseError("index entry '" + lemma + "' names missing synset " + std::to_string(off), 0);
      }
    }
  }
  for (const auto& [offset, s] : synsets_) {
    for (const auto& a : s.antonyms) {
      const auto it = synsets_.find(a.target);
      if (it == synsets_.end()) {
        throw ParseError("antonym pointer from synset " + std::to_string(offset) +
                             " to missing synset " + std::to_string(a.target),
                         0);
      }
      const auto& target = it->second;
      auto pick = [](const std::vector<std::string>& lemmas, std::size_t word) {
        std::vector<std::string> out;
        if (word == 0) return lemmas;
        if (word <= lemmas.size()) out.push_back(lemmas[word - 1]);
        return out;
      };
      for (const auto& from : pick(s.lemmas, a.source)) {
        for (const auto& to : pick(target.lemmas, a.target_word)) {
          if (from == to) continue;
          antonyms_[from].insert(to);
          antonyms_[to].insert(from);
        }
      }
    }
  }
}

std::vector<std::string> WordNetIndex::antonyms(std::string_view lemma) const {
  const auto it = antonyms_.find(lower(std::string(lemma)));
  if (it == antonyms_.end()) return {};
  return {it->second.begin(), it->second.end()};
}

const std::vector<std::uint32_t>* WordNetIndex::synsets_of(std::string_view lemma) const {
  const auto it = index_.find(lower(std::string(lemma)));
  return it == index_.end() ? nullptr : &it->second;
}

const WordNetIndex::Synset* WordNetIndex::synset(std::uint32_t offset) const {
  const auto it = synsets_.find(offset);
  return it == synsets_.end() ? nullptr : &it->second;
}

WordNetIndex load_wordnet(std::istream& index, std::istream& data, const std::string& name) {
  WordNetIndex wn;
  std::string line;
  std::size_t line_no = 0;
  const std::string data_name = name + " data";
  while (std::getline(data, line)) {
    ++line_no;
    if (is_license_line(line) || line.empty()) continue;
    const auto bar = line.find(" | ");
    const auto w = words_of(line.substr(0, bar));
    // offset lex_filenum ss_type w_cnt (word lex_id)* p_cnt (sym offset pos st)*
    if (w.size() < 4) throw ParseError(data_name + ": truncated synset line", line_no);
    const auto offset = number<std::uint32_t>(w[0], 10, "synset offset", line_no, data_name);
    const auto count = number<std::size_t>(w[3], 16, "word count", line_no, data_name);
    std::size_t pos = 4;
    WordNetIndex::Synset s;
    for (std::size_t i = 0; i < count; ++i, pos += 2) {
      if (pos + 1 >= w.size()) throw ParseError(data_name + ": truncated word list at synset " + w[0], line_no);
      s.lemmas.push_back(clean_word(w[pos]));
    }
    if (pos >= w.size()) throw ParseError(data_name + ": missing pointer count at synset " + w[0], line_no);
    const auto pointers = number<std::size_t>(w[pos++], 10, "pointer count", line_no, data_name);
    for (std::size_t i = 0; i < pointers; ++i, pos += 4) {
      if (pos + 3 >= w.size()) throw ParseError(data_name + ": truncated pointer at synset " + w[0], line_no);
      if (w[pos] != "!" || w[pos + 2] != "v") continue;
      const auto target = number<std::uint32_t>(w[pos + 1], 10, "pointer offset", line_no, data_name);
      const std::string& st = w[pos + 3];
      if (st.size() != 4) throw ParseError(data_name + ": malformed source/target '" + st + "'", line_no);
      s.antonyms.push_back({number<std::size_t>(st.substr(0, 2), 16, "source word", line_no, data_name),
                            target,
                            number<std::size_t>(st.substr(2, 2), 16, "target word", line_no, data_name)});
    }
    wn.add_synset(offset, std::move(s));
  }

  line_no = 0;
  const std::string index_name = name + " index";
  while (std::getline(index, line)) {
    ++line_no;
    if (is_license_line(line) || line.empty()) continue;
    const auto w = words_of(line);
    // lemma pos synset_cnt p_cnt ptr* sense_cnt tagsense_cnt offset*
    if (w.size() < 4) throw ParseError(index_name + ": truncated entry", line_no);
    if (w[1] != "v") continue;
    const auto synsets = number<std::size_t>(w[2], 10, "synset count", line_no, index_name);
    const auto ptrs = number<std::size_t>(w[3], 10, "pointer count", line_no, index_name);
    const std::size_t first = 4 + ptrs + 2;
    if (w.size() < first + synsets) {
      throw ParseError(index_name + ": entry '" + w[0] + "' lists fewer offsets than declared", line_no);
    }
    std::vector<std::uint32_t> offsets;
    for (std::size_t i = 0; i < synsets; ++i) {
      offsets.push_back(number<std::uint32_t>(w[first + i], 10, "synset offset", line_no, index_name));
    }
    wn.add_lemma(w[0], std::move(offsets));
  }
  wn.finalize();
  return wn;
}

WordNetIndex load_wordnet(const std::filesystem::path& index_verb,
                          const std::filesystem::path& data_verb) {
  auto index = data::open_input(index_verb);
  auto data = data::open_input(data_verb);
  return load_wordnet(index, data, index_verb.parent_path().string());
}

WordNetIndex load_wordnet_dir(const std::filesystem::path& dict) {
  return load_wordnet(dict / "index.verb", dict / "data.verb");
}

}  // namespace bait::augment
