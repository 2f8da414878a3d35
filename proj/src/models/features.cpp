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

#include "bait/models/features.hpp"

#include <string>
#include <unordered_set>

#include "bait/errors.hpp"
#include "bait/log.hpp"

namespace bait::models {

using data::EmbeddingSpace;
using data::TextUnit;

namespace {

void expect_store(const data::EmbeddingStore* s, EmbeddingSpace space, TextUnit unit,
                  const char* what) {
  if (!s) return;
  if (s->space() != space || s->unit() != unit) {
    throw IntegrityError(std::string(what) + " store has the wrong space/unit header");
  }
}

}  // namespace

FeatureBank::FeatureBank(const data::EmbeddingStore* sim_head, const data::EmbeddingStore* sim_body,
                         const data::EmbeddingStore* nli_head, const data::EmbeddingStore* nli_body,
                         std::size_t max_body_sentences)
    : sim_head_(sim_head),
      sim_body_(sim_body),
      nli_head_(nli_head),
      nli_body_(nli_body),
      max_body_(max_body_sentences) {
  if (!sim_head_ || !sim_body_) throw ParameterError("SIM head and body stores are required");
  if ((nli_head_ == nullptr) != (nli_body_ == nullptr)) {
    throw ParameterError("NLI head and body stores go together");
  }
  expect_store(sim_head_, EmbeddingSpace::kSim, TextUnit::kHead, "SIM head");
  expect_store(sim_body_, EmbeddingSpace::kSim, TextUnit::kBody, "SIM body");
  expect_store(nli_head_, EmbeddingSpace::kNli, TextUnit::kHead, "NLI head");
  expect_store(nli_body_, EmbeddingSpace::kNli, TextUnit::kBody, "NLI body");
  if (sim_head_->dim() != sim_body_->dim()) {
    throw DimensionError("SIM head dim " + std::to_string(sim_head_->dim()) + " != body dim " +
                         std::to_string(sim_body_->dim()));
  }
  if (nli_head_ && nli_head_->dim() != nli_body_->dim()) {
    throw DimensionError("NLI head dim " + std::to_string(nli_head_->dim()) + " != body dim " +
                         std::to_string(nli_body_->dim()));
  }
}

void FeatureBank::set_headline_map(std::vector<std::uint32_t> corpus_to_store) {
  head_map_ = std::move(corpus_to_store);
}

std::uint32_t FeatureBank::store_head_id(std::uint32_t headline_id) const {
  if (head_map_.empty()) return headline_id;
  if (headline_id >= head_map_.size()) {
    throw IntegrityError("headline id " + std::to_string(headline_id) + " has no embedding");
  }
  return head_map_[headline_id];
}

SampleInput FeatureBank::prepare(std::uint32_t headline_id, std::uint32_t body_id,
                                 Views views) const {
  SampleInput in;
  const std::uint32_t head = store_head_id(headline_id);
  const nn::Matrix& sim_body = sim_body_->at(body_id);
  if (wants(views, Views::kSim)) {
    in.sim_head = sim_head_->at(head).row(0);
    in.sim_body = data::pad_truncate_body(sim_body, max_body_);
  }
  if (wants(views, Views::kNli)) {
    if (!nli_head_) throw IntegrityError("NLI stores are not attached");
    const nn::Matrix& nli_body = nli_body_->at(body_id);
    if (nli_body.rows() != sim_body.rows()) {
      throw IntegrityError("body " + std::to_string(body_id) + " has " +
                           std::to_string(sim_body.rows()) + " SIM rows but " +
                           std::to_string(nli_body.rows()) + " NLI rows");
    }
    in.nli_head = nli_head_->at(head).row(0);
    in.nli_body = data::pad_truncate_body(nli_body, max_body_);
  }
  return in;
}

std::vector<data::SamplePair> FeatureBank::usable(std::span<const data::SamplePair> samples,
                                                  Views views) const {
  std::vector<data::SamplePair> out;
  out.reserve(samples.size());
  std::unordered_set<std::uint32_t> warned;
  for (const auto& s : samples) {
    const std::uint32_t head = store_head_id(s.headline_id);
    (void)sim_head_->at(head);
    const nn::Matrix& body = sim_body_->at(s.body_id);
    if (wants(views, Views::kNli)) {
      if (!nli_head_) throw IntegrityError("NLI stores are not attached");
      (void)nli_head_->at(head);
      if (nli_body_->at(s.body_id).rows() != body.rows()) {
        throw IntegrityError("body " + std::to_string(s.body_id) +
                             " has different SIM and NLI sentence counts");
      }
    }
    if (body.rows() == 0) {
      if (warned.insert(s.body_id).second) {
        log::warn("body ", s.body_id, " has no sentences; its samples are dropped");
      }
      continue;
    }
    out.push_back(s);
  }
  return out;
}

}  // namespace bait::models
