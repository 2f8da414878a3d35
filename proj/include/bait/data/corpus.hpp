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

#ifndef BAIT_DATA_CORPUS_HPP_
#define BAIT_DATA_CORPUS_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace bait::data {

// Stance of a headline toward an article body. The numeric order (AGR, DSG,
// DSC, UNR) is the class index used by every model and report.
enum class Stance : std::uint8_t { kAgree = 0, kDisagree = 1, kDiscuss = 2, kUnrelated = 3 };

inline constexpr std::size_t kNumStances = 4;
inline constexpr std::array<Stance, kNumStances> kAllStances = {
    Stance::kAgree, Stance::kDisagree, Stance::kDiscuss, Stance::kUnrelated};

// "agree", "disagree", "discuss", "unrelated"
std::string_view stance_name(Stance s);
// "AGR", "DSG", "DSC", "UNR"
std::string_view stance_abbrev(Stance s);
std::optional<Stance> parse_stance(std::string_view name);

inline std::size_t index_of(Stance s) { return static_cast<std::size_t>(s); }
inline bool is_related(Stance s) { return s != Stance::kUnrelated; }

struct SamplePair {
  std::uint32_t headline_id = 0;
  std::uint32_t body_id = 0;
  Stance stance = Stance::kUnrelated;

  friend bool operator==(const SamplePair&, const SamplePair&) = default;
};

// Headline pair without a gold label (predict input).
struct UnlabeledPair {
  std::uint32_t headline_id = 0;
  std::uint32_t body_id = 0;
};

// NFC normalization followed by whitespace trimming; the identity key for
// headlines.
std::string normalize_headline(std::string_view text);

// Distinct headlines, id = order of first appearance.
class HeadlineTable {
 public:
  std::uint32_t intern(std::string_view text);
  std::optional<std::uint32_t> find(std::string_view text) const;
  const std::string& text(std::uint32_t id) const;
  std::size_t size() const { return texts_.size(); }
  const std::vector<std::string>& texts() const { return texts_; }

 private:
  std::vector<std::string> texts_;
  std::unordered_map<std::string, std::uint32_t> ids_;
};

// Reads `Headline,Body ID,Stance`. Headlines are interned into `headlines`,
// so train and test files can share one table.
std::vector<SamplePair> load_stances_csv(const std::filesystem::path& path,
                                         HeadlineTable& headlines);

// Reads `Headline,Body ID` (any Stance column is ignored).
std::vector<UnlabeledPair> load_pairs_csv(const std::filesystem::path& path,
                                          HeadlineTable& headlines);

struct BodyTable {
  std::map<std::uint32_t, std::string> texts;
  std::vector<std::uint32_t> empty_ids;  // bodies whose text is blank
};

// Reads `Body ID,articleBody`. Duplicate ids are an IntegrityError.
BodyTable load_bodies_csv(const std::filesystem::path& path);

// One headline per line; line index (0-based) is the headline id.
std::vector<std::string> read_headline_sidecar(const std::filesystem::path& path);
void write_headline_sidecar(const std::filesystem::path& path,
                            const std::vector<std::string>& headlines);

struct ClassDistribution {
  std::array<std::size_t, kNumStances> counts{};
  std::array<double, kNumStances> proportions{};
  std::size_t total = 0;
};

ClassDistribution class_distribution(std::span<const SamplePair> samples);

struct DatasetSplit {
  std::vector<SamplePair> train;
  std::vector<SamplePair> validation;
};

// Sends a seeded random `fraction` of the distinct headlines (rounded, at
// least one, at most all but one) with all their samples to validation.
// Sample order within each part follows the input order.
DatasetSplit headline_split(std::span<const SamplePair> samples, double fraction,
                            std::uint64_t seed);

}  // namespace bait::data

#endif  // BAIT_DATA_CORPUS_HPP_
