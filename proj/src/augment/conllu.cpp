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

#include "bait/augment/conllu.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "bait/data/csv.hpp"
#include "bait/errors.hpp"

namespace bait::augment {

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    out.push_back(line.substr(start, tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  return out;
}

bool parse_count(const std::string& s, std::size_t& out) {
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Value of a "# key = value" comment, if the line is one.
bool comment_value(const std::string& line, const std::string& key, std::string& value) {
  std::string body = trim(line.substr(1));
  if (body.rfind(key, 0) != 0) return false;
  body = trim(body.substr(key.size()));
  if (body.empty() || body[0] != '=') return false;
  value = trim(body.substr(1));
  return true;
}

bool is_closing(const std::string& t) {
  static const char* kClosing[] = {",", ".", "!", "?", ":", ";", "%", ")", "]", "}", "...",
                                   "'s", "'S", "n't", "N'T", "'re", "'ve", "'ll", "'d", "'m",
                                   "’s", "n’t", "''", "”"};
  return std::find(std::begin(kClosing), std::end(kClosing), t) != std::end(kClosing);
}

bool is_opening(const std::string& t) {
  return t == "(" || t == "[" || t == "{" || t == "$" || t == "``" || t == "“";
}

}  // namespace

std::size_t ParsedHeadline::root() const {
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].head == 0) return i;
  }
  throw IntegrityError("headline " + std::to_string(headline_id) + " has no root token");
}

std::vector<ParsedHeadline> parse_conllu(std::istream& in, const std::string& name) {
  std::vector<ParsedHeadline> out;
  ParsedHeadline current;
  bool has_id = false;
  std::size_t line_no = 0;
  std::size_t sentence_line = 0;

  auto finish = [&] {
    if (current.tokens.empty()) {
      current = {};
      has_id = false;
      sentence_line = 0;
      return;
    }
    std::size_t roots = 0;
    for (const auto& t : current.tokens) {
      if (t.head > current.tokens.size()) {
        throw IntegrityError(name + ":" + std::to_string(sentence_line) + ": token " +
                             std::to_string(t.index) + " points at head " + std::to_string(t.head) +
                             " beyond the sentence");
      }
      roots += t.head == 0;
    }
    if (roots != 1) {
      throw IntegrityError(name + ":" + std::to_string(sentence_line) + ": sentence has " +
                           std::to_string(roots) + " root tokens, expected 1");
    }
    if (!has_id) current.headline_id = static_cast<std::uint32_t>(out.size());
    if (current.text.empty()) {
      std::vector<std::string> forms;
      for (const auto& t : current.tokens) forms.push_back(t.form);
      current.text = detokenize(forms);
    }
    out.push_back(std::move(current));
    current = {};
    has_id = false;
    sentence_line = 0;
  };

  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) {
      finish();
      continue;
    }
    if (sentence_line == 0) sentence_line = line_no;
    if (line[0] == '#') {
      std::string value;
      if (comment_value(line, "headline_id", value)) {
        std::size_t id = 0;
        if (!parse_count(value, id)) throw ParseError(name + ": headline_id '" + value + "' is not a number", line_no);
        current.headline_id = static_cast<std::uint32_t>(id);
        has_id = true;
      } else if (comment_value(line, "text", value)) {
        current.text = value;
      }
      continue;
    }
    const auto cols = split_tabs(line);
    if (cols.size() != 10) {
      throw ParseError(name + ": expected 10 tab-separated columns, found " +
                           std::to_string(cols.size()),
                       line_no);
    }
    if (cols[0].find_first_of("-.") != std::string::npos) continue;  // ranges, empty nodes
    DependencyToken t;
    if (!parse_count(cols[0], t.index)) {
      throw ParseError(name + ": token id '" + cols[0] + "' is not a number", line_no);
    }
    if (!parse_count(cols[6], t.head)) {
      throw ParseError(name + ": head '" + cols[6] + "' is not a number", line_no);
    }
    if (t.index != current.tokens.size() + 1) {
      throw ParseError(name + ": token id " + cols[0] + " out of sequence", line_no);
    }
    t.form = cols[1];
    t.lemma = cols[2];
    t.upos = cols[3];
    t.deprel = cols[7];
    current.tokens.push_back(std::move(t));
  }
  finish();
  return out;
}

std::vector<ParsedHeadline> parse_conllu_file(const std::filesystem::path& path) {
  auto in = data::open_input(path);
  return parse_conllu(in, path.string());
}

std::unordered_map<std::uint32_t, ParsedHeadline> index_by_headline(
    std::vector<ParsedHeadline> parses) {
  std::unordered_map<std::uint32_t, ParsedHeadline> out;
  for (auto& p : parses) {
    const auto id = p.headline_id;
    if (!out.emplace(id, std::move(p)).second) {
      throw IntegrityError("headline " + std::to_string(id) + " is parsed more than once");
    }
  }
  return out;
}

std::string detokenize(std::span<const std::string> forms) {
  std::string out;
  bool attach_next = false;
  bool in_quote = false;
  for (const auto& f : forms) {
    const bool after_opening = attach_next;
    bool attach = after_opening || is_closing(f);
    attach_next = is_opening(f);
    if (f == "\"") {
      // Alternate: an opening quote binds rightwards, a closing one leftwards.
      attach = in_quote || after_opening;
      attach_next = !in_quote;
      in_quote = !in_quote;
    }
    if (!out.empty() && !attach) out += ' ';
    out += f;
  }
  return out;
}

}  // namespace bait::augment
