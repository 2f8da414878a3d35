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

#ifndef BAIT_AUGMENT_WORDNET_HPP_
#define BAIT_AUGMENT_WORDNET_HPP_

#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace bait::augment {

// Verb part of a WordNet 3.x database: lemma -> synsets, synset -> members,
// and the antonym relation between lemmas (closed under symmetry).
class WordNetIndex {
 public:
  struct Synset {
    std::vector<std::string> lemmas;
    // Lexical antonym pointers: (source word, target synset, target word),
    // word numbers 1-based with 0 meaning the whole synset.
    struct Antonym {
      std::size_t source = 0;
      std::uint32_t target = 0;
      std::size_t target_word = 0;
    };
    std::vector<Antonym> antonyms;
  };

  void add_synset(std::uint32_t offset, Synset synset);
  void add_lemma(const std::string& lemma, std::vector<std::uint32_t> offsets);
  // Resolves antonym pointers into the lemma relation. ParseError naming the
  // offset for a pointer or index entry whose synset is missing.
  void finalize();

  // Sorted, lowercase, underscores for multiword lemmas; empty when absent.
  std::vector<std::string> antonyms(std::string_view lemma) const;
  const std::vector<std::uint32_t>* synsets_of(std::string_view lemma) const;
  const Synset* synset(std::uint32_t offset) const;
  std::size_t lemma_count() const { return index_.size(); }

 private:
  std::map<std::string, std::vector<std::uint32_t>, std::less<>> index_;
  std::map<std::uint32_t, Synset> synsets_;
  std::map<std::string, std::set<std::string>, std::less<>> antonyms_;
};

// index.verb / data.verb; license lines (leading spaces) are skipped.
WordNetIndex load_wordnet(std::istream& index, std::istream& data, const std::string& name);
WordNetIndex load_wordnet(const std::filesystem::path& index_verb,
                          const std::filesystem::path& data_verb);
// Both files from a WordNet dict directory.
WordNetIndex load_wordnet_dir(const std::filesystem::path& dict);

}  // namespace bait::augment

#endif  // BAIT_AUGMENT_WORDNET_HPP_
