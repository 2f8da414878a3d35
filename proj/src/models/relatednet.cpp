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

#include "bait/models/relatednet.hpp"

#include <algorithm>
#include <memory>
#include <numeric>
#include <string>

#include "bait/errors.hpp"
#include "bait/nn/ops.hpp"

namespace bait::models {

namespace {

void require_positive(std::size_t value, const char* name) {
  if (value == 0) throw ParameterError(std::string(name) + " must be at least 1");
}

}  // namespace

void RelatedNetConfig::validate() const {
  require_positive(sim_dim, "sim_dim");
  require_positive(k, "k");
  require_positive(hidden_a, "hidden_a");
  require_positive(hidden_b, "hidden_b");
  if (!(dropout >= 0.0 && dropout < 1.0)) {
    throw ParameterError("dropout must lie in [0, 1), got " + std::to_string(dropout));
  }
}

std::vector<std::size_t> RelatedNetConfig::layer_widths() const {
  return {input_dim(), hidden_a, hidden_a, hidden_a, hidden_b, RelatedNet::kClasses};
}

std::size_t parameter_count(const RelatedNetConfig& config) {
  const auto w = config.layer_widths();
  std::size_t n = 0;
  for (std::size_t i = 0; i + 1 < w.size(); ++i) n += w[i] * w[i + 1] + w[i + 1];
  return n;
}

TopK top_k_similar(std::span<const float> head, const data::PaddedBody& body, std::size_t k) {
  if (k == 0) throw ParameterError("k must be at least 1");
  if (body.length == 0) throw DegenerateInputError("top-k selection over an empty body");
  if (head.size() != body.matrix.cols()) {
    throw DimensionError("head of width " + std::to_string(head.size()) + " against body " +
                         body.matrix.shape());
  }
  struct Candidate {
    std::size_t index;
    double score;
    bool degenerate;
  };
  std::vector<Candidate> candidates;
  for (std::size_t r = 0; r < body.matrix.rows(); ++r) {
    if (!body.mask[r]) continue;
    const auto c = nn::cosine_similarity<float>(head, body.matrix.row(r));
    candidates.push_back({r, c.value, c.degenerate});
  }
  if (candidates.empty()) throw DegenerateInputError("top-k selection over a fully masked body");
  const std::size_t take = std::min(k, candidates.size());
  std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(take),
                    candidates.end(), [](const Candidate& a, const Candidate& b) {
                      if (a.degenerate != b.degenerate) return b.degenerate;
                      if (a.score != b.score) return a.score > b.score;
                      return a.index < b.index;
                    });
  TopK out;
  for (std::size_t i = 0; i < k; ++i) {
    const auto& c = candidates[std::min(i, take - 1)];
    out.indices.push_back(c.index);
    out.scores.push_back(c.score);
  }
  return out;
}

void gather_rows(std::span<const float> head, const nn::Matrix& body,
                 std::span<const std::size_t> indices, std::span<float> out) {
  const std::size_t d = head.size();
  if (body.cols() != d || out.size() != (indices.size() + 1) * d) {
    throw DimensionError("gather of " + std::to_string(indices.size()) + " rows from " +
                         body.shape() + " into width " + std::to_string(out.size()));
  }
  std::copy(head.begin(), head.end(), out.begin());
  for (std::size_t i = 0; i < indices.size(); ++i) {
    const auto row = body.row(indices[i]);
    std::copy(row.begin(), row.end(), out.begin() + static_cast<std::ptrdiff_t>((i + 1) * d));
  }
}

nn::Matrix relatednet_inputs(std::span<const SampleInput* const> batch,
                             const RelatedNetConfig& config) {
  nn::Matrix x(batch.size(), config.input_dim());
  for (std::size_t b = 0; b < batch.size(); ++b) {
    const SampleInput& s = *batch[b];
    if (s.sim_head.size() != config.sim_dim) {
      throw DimensionError("similarity head of width " + std::to_string(s.sim_head.size()) +
                           " for a model expecting " + std::to_string(config.sim_dim));
    }
    const TopK top = top_k_similar(s.sim_head, s.sim_body, config.k);
    gather_rows(s.sim_head, s.sim_body.matrix, top.indices, x.row(b));
  }
  return x;
}

void RelatedNet::check(const Config& config, const Params<float>& params) {
  config.validate();
  const auto widths = config.layer_widths();
  bool ok = params.layers.size() + 1 == widths.size();
  for (std::size_t i = 0; ok && i < params.layers.size(); ++i) {
    params.layers[i].validate();
    ok = params.layers[i].in_dim() == widths[i] && params.layers[i].out_dim() == widths[i + 1];
  }
  if (!ok) throw DimensionError("relatednet parameters do not match the configuration");
}

double relatednet_probability(const RelatedNetParams& params, const RelatedNetConfig& config,
                              const SampleInput& sample) {
  nn::Tape tape;
  Rng rng(0);
  const SampleInput* batch[] = {&sample};
  const nn::Var p =
      RelatedNet::forward<float>(tape, params, nullptr, config, batch, Mode::kInference, rng);
  return tape.value(p)(0, RelatedNet::kRelatedIndex);
}

double mean_top_k_similarity(const SampleInput& sample, std::size_t k) {
  const TopK top = top_k_similar(sample.sim_head, sample.sim_body, k);
  const std::size_t real = std::min(k, sample.sim_body.length);
  double sum = 0.0;
  for (std::size_t i = 0; i < real; ++i) sum += top.scores[i];
  return sum / static_cast<double>(real);
}

ThresholdResult best_threshold(std::span<const double> scores, std::span<const bool> related) {
  if (scores.empty()) throw ParameterError("threshold sweep over an empty dataset");
  if (scores.size() != related.size()) {
    throw ParameterError("threshold sweep with " + std::to_string(scores.size()) +
                         " scores and " + std::to_string(related.size()) + " labels");
  }
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  const auto positives = static_cast<double>(std::count(related.begin(), related.end(), true));

  // Walk thresholds from high to low; at each distinct score everything at or
  // above it is predicted related.
  ThresholdResult best{scores[order.front()], -1.0};
  double tp = 0.0, predicted = 0.0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    tp += related[order[i]] ? 1.0 : 0.0;
    predicted += 1.0;
    if (i + 1 < order.size() && scores[order[i + 1]] == scores[order[i]]) continue;
    const double denom = predicted + positives;
    const double f1 = denom > 0.0 ? 2.0 * tp / denom : 0.0;
    if (f1 >= best.f1) best = {scores[order[i]], f1};
  }
  return best;
}

ThresholdResult threshold_baseline(const FeatureBank& bank,
                                   std::span<const data::SamplePair> samples, std::size_t k) {
  const auto usable = bank.usable(samples, Views::kSim);
  std::vector<double> scores;
  const std::unique_ptr<bool[]> related(new bool[usable.size()]);
  for (std::size_t i = 0; i < usable.size(); ++i) {
    const auto& s = usable[i];
    scores.push_back(mean_top_k_similarity(bank.prepare(s.headline_id, s.body_id, Views::kSim), k));
    related[i] = data::is_related(s.stance);
  }
  return best_threshold(scores, std::span<const bool>(related.get(), usable.size()));
}

}  // namespace bait::models
