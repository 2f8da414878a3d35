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

#include "bait/data/corpus.hpp"

#include <unicode/normalizer2.h>
#include <unicode/unistr.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <unordered_set>

#include "bait/data/csv.hpp"
#include "bait/errors.hpp"
#include "bait/rng.hpp"

namespace bait::data {

namespace {

std::uint32_t parse_id(const std::string& field, std::size_t line, std::string_view column) {
  std::uint32_t value = 0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  while (first < last && *first == ' ') ++first;
  while (last > first && last[-1] == ' ') --last;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || first == last) {
    throw ParseError("bad " + std::string(column) + " '" + field + "'", line);
  }
  return value;
}

}  // namespace

std::string_view stance_name(Stance s) {
  switch (s) {
    case Stance::kAgree: return "agree";
    case Stance::kDisagree: return "disagree";
    case Stance::kDiscuss: return "discuss";
    case Stance::kUnrelated: return "unrelated";
  }
  return "?";
}

std::string_view stance_abbrev(Stance s) {
  switch (s) {
    case Stance::kAgree: return "AGR";
    case Stance::kDisagree: return "DSG";
    case Stance::kDiscuss: return "DSC";
    case Stance::kUnrelated: return "UNR";
  }
  return "?";
}

std::optional<Stance> parse_stance(std::string_view name) {
  for (Stance s : kAllStances) {
    if (name == stance_name(s)) return s;
  }
  return std::nullopt;
}

std::string normalize_headline(std::string_view text) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) throw Error("ICU NFC normalizer unavailable");
  icu::UnicodeString s = icu::UnicodeString::fromUTF8(
      icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
  icu::UnicodeString out = nfc->normalize(s, status);
  if (U_FAILURE(status)) throw ParseError("cannot normalize headline text");
  out.trim();
  std::string utf8;
  out.toUTF8String(utf8);
  return utf8;
}

std::uint32_t HeadlineTable::intern(std::string_view text) {
  std::string key = normalize_headline(text);
  auto [it, inserted] = ids_.try_emplace(key, static_cast<std::uint32_t>(texts_.size()));
  if (inserted) texts_.push_back(std::move(key));
  return it->second;
}

std::optional<std::uint32_t> HeadlineTable::find(std::string_view text) const {
  auto it = ids_.find(normalize_headline(text));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

const std::string& HeadlineTable::text(std::uint32_t id) const {
  if (id >= texts_.size()) throw IndexError("headline id " + std::to_string(id) + " unknown");
  return texts_[id];
}

std::vector<SamplePair> load_stances_csv(const std::filesystem::path& path,
                                         HeadlineTable& headlines) {
  auto in = open_input(path);
  CsvReader reader(in);
  std::vector<std::string> row;
  if (!reader.next(row)) throw ParseError(path.string() + ": empty stances file", 1);
  const CsvHeader header(row);
  const std::size_t c_head = header.require("Headline");
  const std::size_t c_body = header.require("Body ID");
  const std::size_t c_stance = header.require("Stance");
  const std::size_t width = std::max({c_head, c_body, c_stance}) + 1;
  std::vector<SamplePair> samples;
  while (reader.next(row)) {
    if (row.size() == 1 && row[0].empty()) continue;  // blank line
    const std::size_t line = reader.record_line();
    if (row.size() < width) throw ParseError(path.string() + ": short row", line);
    auto stance = parse_stance(row[c_stance]);
    if (!stance) {
      throw ParseError(path.string() + ": unknown stance '" + row[c_stance] + "'", line);
    }
    samples.push_back(
        {headlines.intern(row[c_head]), parse_id(row[c_body], line, "Body ID"), *stance});
  }
  return samples;
}

std::vector<UnlabeledPair> load_pairs_csv(const std::filesystem::path& path,
                                          HeadlineTable& headlines) {
  auto in = open_input(path);
  CsvReader reader(in);
  std::vector<std::string> row;
  if (!reader.next(row)) throw ParseError(path.string() + ": empty pairs file", 1);
  const CsvHeader header(row);
  const std::size_t c_head = header.require("Headline");
  const std::size_t c_body = header.require("Body ID");
  const std::size_t width = std::max(c_head, c_body) + 1;
  std::vector<UnlabeledPair> pairs;
  while (reader.next(row)) {
    if (row.size() == 1 && row[0].empty()) continue;
    const std::size_t line = reader.record_line();
    if (row.size() < width) throw ParseError(path.string() + ": short row", line);
    pairs.push_back({headlines.intern(row[c_head]), parse_id(row[c_body], line, "Body ID")});
  }
  return pairs;
}

BodyTable load_bodies_csv(const std::filesystem::path& path) {
  auto in = open_input(path);
  CsvReader reader(in);
  std::vector<std::string> row;
  if (!reader.next(row)) throw ParseError(path.string() + ": empty bodies file", 1);
  const CsvHeader header(row);
  const std::size_t c_id = header.require("Body ID");
  const std::size_t c_text = header.require("articleBody");
  const std::size_t width = std::max(c_id, c_text) + 1;
  BodyTable table;
  while (reader.next(row)) {
    if (row.size() == 1 && row[0].empty()) continue;
    const std::size_t line = reader.record_line();
    if (row.size() < width) throw ParseError(path.string() + ": short row", line);
    const std::uint32_t id = parse_id(row[c_id], line, "Body ID");
    const bool blank = row[c_text].find_first_not_of(" \t\r\n") == std::string::npos;
    auto [it, inserted] = table.texts.emplace(id, std::move(row[c_text]));
    if (!inserted) {
      throw IntegrityError(path.string() + ": duplicate Body ID " + std::to_string(id) +
                           " (line " + std::to_string(line) + ")");
    }
    if (blank) table.empty_ids.push_back(id);
  }
  return table;
}

std::vector<std::string> read_headline_sidecar(const std::filesystem::path& path) {
  auto in = open_input(path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  return lines;
}

void write_headline_sidecar(const std::filesystem::path& path,
                            const std::vector<std::string>& headlines) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  for (const auto& h : headlines) {
    if (h.find('\n') != std::string::npos) {
      throw ParameterError("headline contains a line break: " + h);
    }
    out << h << '\n';
  }
}

ClassDistribution class_distribution(std::span<const SamplePair> samples) {
  if (samples.empty()) throw ParameterError("class distribution of an empty sample set");
  ClassDistribution d;
  for (const auto& s : samples) ++d.counts[index_of(s.stance)];
  d.total = samples.size();
  for (std::size_t c = 0; c < kNumStances; ++c) {
    d.proportions[c] = static_cast<double>(d.counts[c]) / static_cast<double>(d.total);
  }
  return d;
}

DatasetSplit headline_split(std::span<const SamplePair> samples, double fraction,
                            std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction < 1.0)) {
    throw ParameterError("validation fraction must be in (0, 1)");
  }
  std::vector<std::uint32_t> heads;
  std::unordered_set<std::uint32_t> seen;
  for (const auto& s : samples) {
    if (seen.insert(s.headline_id).second) heads.push_back(s.headline_id);
  }
  if (heads.size() < 2) throw ParameterError("headline split needs at least two headlines");
  std::sort(heads.begin(), heads.end());
  Rng rng(seed);
  rng.shuffle(heads.begin(), heads.end());
  auto n_val = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(heads.size())));
  n_val = std::clamp<std::size_t>(n_val, 1, heads.size() - 1);
  const std::unordered_set<std::uint32_t> val_heads(heads.begin(), heads.begin() + n_val);
  DatasetSplit split;
  for (const auto& s : samples) {
    (val_heads.count(s.headline_id) ? split.validation : split.train).push_back(s);
  }
  return split;
}

}  // namespace bait::data
