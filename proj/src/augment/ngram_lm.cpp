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

#include "bait/augment/ngram_lm.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

#include "bait/errors.hpp"

namespace bait::augment {

NgramLm::NgramLm(std::span<const std::string> sentences, std::size_t n, double k) : n_(n), k_(k) {
  if (sentences.empty()) throw ParameterError("language model needs a nonempty corpus");
  if (n == 0) throw ParameterError("n-gram order must be at least 1");
  if (!(k > 0.0)) throw ParameterError("add-k constant must be positive");
  for (const auto& s : sentences) {
    for (const auto& w : tokenize(s)) ++words_[w];
  }
  vocab_size_ = words_.size() + 2;  // plus end marker and unknown
  for (const auto& s : sentences) {
    const auto seq = padded(s);
    for (std::size_t i = n_ - 1; i < seq.size(); ++i) {
      const std::span<const std::string> gram(seq.data() + i + 1 - n_, n_);
      ++ngram_counts_[key(gram)];
      ++context_counts_[key(gram.first(n_ - 1))];
    }
  }
}

std::vector<std::string> NgramLm::tokenize(std::string_view sentence) {
  std::vector<std::string> out;
  std::string lowered(sentence);
  for (auto& c : lowered) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  std::istringstream is(lowered);
  std::string w;
  while (is >> w) out.push_back(w);
  return out;
}

std::string NgramLm::key(std::span<const std::string> words) {
  std::string k;
  for (const auto& w : words) {
    k += w;
    k += '\x1f';
  }
  return k;
}

std::vector<std::string> NgramLm::padded(std::string_view sentence) const {
  std::vector<std::string> seq(n_ - 1, kStart);
  for (auto& w : tokenize(sentence)) seq.push_back(std::move(w));
  seq.push_back(kEnd);
  return seq;
}

double NgramLm::log_probability(std::span<const std::string> history,
                                const std::string& word) const {
  std::vector<std::string> gram(history.begin(), history.end());
  gram.push_back(word);
  const auto ng = ngram_counts_.find(key(gram));
  const auto ctx = context_counts_.find(key(history));
  const double num = (ng == ngram_counts_.end() ? 0.0 : static_cast<double>(ng->second)) + k_;
  const double den = (ctx == context_counts_.end() ? 0.0 : static_cast<double>(ctx->second)) +
                     k_ * static_cast<double>(vocab_size_);
  return std::log(num / den);
}

double NgramLm::score(std::string_view sentence) const {
  auto seq = padded(sentence);
  for (std::size_t i = n_ - 1; i + 1 < seq.size(); ++i) {
    if (!words_.count(seq[i])) seq[i] = kUnknown;
  }
  double total = 0.0;
  for (std::size_t i = n_ - 1; i < seq.size(); ++i) {
    const std::span<const std::string> history(seq.data() + i + 1 - n_, n_ - 1);
    total += log_probability(history, seq[i]);
  }
  return total;
}

}  // namespace bait::augment
