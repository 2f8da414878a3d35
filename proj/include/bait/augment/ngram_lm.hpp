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

#ifndef BAIT_AUGMENT_NGRAM_LM_HPP_
#define BAIT_AUGMENT_NGRAM_LM_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace bait::augment {

// Sentence scorer used to rank negation candidates; higher is more fluent.
class LmScorer {
 public:
  virtual ~LmScorer() = default;
  virtual double score(std::string_view sentence) const = 0;
};

inline constexpr std::size_t kDefaultOrder = 3;
inline constexpr double kDefaultAddK = 0.01;

// Word n-gram model with add-k smoothing:
//   P(w | h) = (c(h w) + k) / (c(h) + k V)
// where V counts the training vocabulary plus end-of-sentence and unknown
// tokens. Sentences are padded with n-1 start markers and one end marker;
// scores are natural-log probabilities.
class NgramLm : public LmScorer {
 public:
  // ParameterError for an empty corpus, n = 0 or k <= 0.
  explicit NgramLm(std::span<const std::string> sentences, std::size_t n = kDefaultOrder,
                   double k = kDefaultAddK);

  double score(std::string_view sentence) const override;
  double log_probability(std::span<const std::string> history, const std::string& word) const;

  std::size_t order() const { return n_; }
  std::size_t vocabulary_size() const { return vocab_size_; }

  // Lowercased whitespace tokens.
  static std::vector<std::string> tokenize(std::string_view sentence);

  static constexpr const char* kStart = "<s>";
  static constexpr const char* kEnd = "</s>";
  static constexpr const char* kUnknown = "<unk>";

 private:
  std::vector<std::string> padded(std::string_view sentence) const;
  static std::string key(std::span<const std::string> words);

  std::size_t n_;
  double k_;
  std::size_t vocab_size_ = 0;
  std::unordered_map<std::string, std::size_t> words_;
  std::unordered_map<std::string, std::size_t> ngram_counts_;
  std::unordered_map<std::string, std::size_t> context_counts_;
};

}  // namespace bait::augment

#endif  // BAIT_AUGMENT_NGRAM_LM_HPP_
