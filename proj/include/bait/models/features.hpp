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

#ifndef BAIT_MODELS_FEATURES_HPP_
#define BAIT_MODELS_FEATURES_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "bait/data/corpus.hpp"
#include "bait/data/embedding_store.hpp"

namespace bait::models {

// Which embedding spaces a consumer reads.
enum class Views : std::uint8_t { kSim = 1, kNli = 2, kBoth = 3 };

inline bool wants(Views have, Views v) {
  return (static_cast<std::uint8_t>(have) & static_cast<std::uint8_t>(v)) != 0;
}

// Everything the models read for one head/body pair. Head spans point into
// the stores; bodies are padded copies. Views that were not requested are
// empty.
struct SampleInput {
  std::span<const float> sim_head;
  std::span<const float> nli_head;
  data::PaddedBody sim_body;
  data::PaddedBody nli_body;
};

// The four embedding stores bound to corpus ids. The stores must outlive the
// bank. NLI stores may be null when only stage 1 is used.
class FeatureBank {
 public:
  FeatureBank(const data::EmbeddingStore* sim_head, const data::EmbeddingStore* sim_body,
              const data::EmbeddingStore* nli_head, const data::EmbeddingStore* nli_body,
              std::size_t max_body_sentences = data::kMaxBodySentences);

  // Maps corpus headline ids onto store record ids (e.g. resolved through the
  // headline sidecar). Without a map the ids are used directly.
  void set_headline_map(std::vector<std::uint32_t> corpus_to_store);

  std::size_t sim_dim() const { return sim_head_->dim(); }
  std::size_t nli_dim() const { return nli_head_ ? nli_head_->dim() : 0; }
  std::size_t max_body_sentences() const { return max_body_; }

  // IntegrityError for a missing record or SIM/NLI sentence-count mismatch;
  // DegenerateInputError for a zero-sentence body.
  SampleInput prepare(std::uint32_t headline_id, std::uint32_t body_id, Views views) const;

  // Drops samples whose body has no sentences (logged); throws IntegrityError
  // for ids missing from the requested stores.
  std::vector<data::SamplePair> usable(std::span<const data::SamplePair> samples,
                                       Views views) const;

 private:
  std::uint32_t store_head_id(std::uint32_t headline_id) const;

  const data::EmbeddingStore* sim_head_;
  const data::EmbeddingStore* sim_body_;
  const data::EmbeddingStore* nli_head_;
  const data::EmbeddingStore* nli_body_;
  std::size_t max_body_;
  std::vector<std::uint32_t> head_map_;
};

}  // namespace bait::models

#endif  // BAIT_MODELS_FEATURES_HPP_
