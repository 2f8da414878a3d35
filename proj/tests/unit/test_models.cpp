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

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <limits>
#include <numeric>

#include <json.hpp>

#include "bait/errors.hpp"
#include "bait/models/checkpoint.hpp"
#include "bait/models/pipeline.hpp"
#include "bait/models/relatednet.hpp"
#include "bait/models/stage2.hpp"
#include "bait/models/trainer.hpp"
#include "bait/nn/ops.hpp"
#include "support/model_gradcheck.hpp"
#include "support/synthetic.hpp"

namespace {

using bait::testing::small_options;

using bait::Rng;
using bait::data::PaddedBody;
using bait::data::SamplePair;
using bait::data::Stance;
using namespace bait::models;

// Independent tally: sum the sizes of every tensor the model allocates.
template <typename Model>
std::size_t allocated_parameters(const typename Model::Config& config) {
  Rng rng(3);
  const auto params = Model::template create<float>(config, rng);
  std::size_t n = 0;
  params.for_each_tensor([&](std::span<const float> t) { n += t.size(); });
  return n;
}

PaddedBody body_from_rows(const std::vector<std::vector<float>>& rows, std::size_t max_rows = 8) {
  bait::nn::Matrix m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::copy(rows[r].begin(), rows[r].end(), m.row(r).begin());
  }
  return bait::data::pad_truncate_body(m, max_rows);
}

std::vector<float> at_cosine(double c) {
  return {static_cast<float>(c), static_cast<float>(std::sqrt(1.0 - c * c))};
}

constexpr std::array<double, 4> kAll = {1, 1, 1, 1};
constexpr std::array<double, 4> kRelatedOnly = {1, 1, 1, 0};

}  // namespace

TEST_SUITE("parameter accounting") {
  TEST_CASE("default relatednet has 2,235,602 parameters") {
    CHECK(parameter_count(RelatedNetConfig{}) == 2235602);
    CHECK(allocated_parameters<RelatedNet>(RelatedNetConfig{}) == 2235602);
  }

  TEST_CASE("default topknet has 195,543 parameters") {
    CHECK(parameter_count(TopKNetConfig{}) == 195543);
    CHECK(stage2_param_count(TopKNetConfig{}) == 195543);
    CHECK(allocated_parameters<TopKNet>(TopKNetConfig{}) == 195543);
  }

  TEST_CASE("default agreemnet accounting is frozen") {
    // 11 heads of 64: query/key 704x385 each, value 704x769, output 768x705,
    // then 1537 -> 60 -> 60 -> 20 -> 3.
    constexpr std::size_t kAttention = 704 * 385 * 2 + 704 * 769 + 768 * 705;
    constexpr std::size_t kTail = 1537 * 60 + 60 + 60 * 60 + 60 + 60 * 20 + 20 + 20 * 3 + 3;
    CHECK(kAttention + kTail == 1722119);
    CHECK(parameter_count(AgreemNetConfig{}) == 1722119);
    CHECK(allocated_parameters<AgreemNet>(AgreemNetConfig{}) == 1722119);
  }

  TEST_CASE("accounting follows the configuration") {
    Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
      RelatedNetConfig r{1 + rng.below(20), 1 + rng.below(6), 1 + rng.below(30), 1 + rng.below(30), 0.1};
      CHECK(parameter_count(r) == allocated_parameters<RelatedNet>(r));
      TopKNetConfig t{1 + rng.below(9), 1 + rng.below(20), 1 + rng.below(6), 1 + rng.below(30),
                      1 + rng.below(30), 0.2};
      CHECK(parameter_count(t) == allocated_parameters<TopKNet>(t));
      AgreemNetConfig a{1 + rng.below(9), 1 + rng.below(20), 1 + rng.below(5), 1 + rng.below(8),
                        1 + rng.below(8), 1 + rng.below(30), 1 + rng.below(30), 0.3};
      CHECK(parameter_count(a) == allocated_parameters<AgreemNet>(a));
    }
  }

  TEST_CASE("invalid configurations are rejected") {
    RelatedNetConfig r;
    r.k = 0;
    CHECK_THROWS_AS(r.validate(), bait::ParameterError);
    r = {};
    r.dropout = 1.0;
    CHECK_THROWS_AS(r.validate(), bait::ParameterError);
    AgreemNetConfig a;
    a.num_heads = 0;
    CHECK_THROWS_AS(a.validate(), bait::ParameterError);
  }
}

TEST_SUITE("top-k selection") {
  TEST_CASE("picks the most similar sentences in descending order") {
    const std::vector<float> head = {1.0f, 0.0f};
    const auto body = body_from_rows({at_cosine(0.802), at_cosine(0.087), at_cosine(0.632)});
    const TopK top = top_k_similar(head, body, 2);
    CHECK(top.indices == std::vector<std::size_t>{0, 2});
    CHECK(top.scores[0] == doctest::Approx(0.802).epsilon(1e-6));
    CHECK(top.scores[1] == doctest::Approx(0.632).epsilon(1e-6));
  }

  TEST_CASE("short bodies repeat the last selected index") {
    const std::vector<float> head = {1.0f, 0.0f};
    const auto body = body_from_rows({at_cosine(0.1), at_cosine(0.9), at_cosine(0.5)});
    CHECK(top_k_similar(head, body, 5).indices == std::vector<std::size_t>{1, 2, 0, 0, 0});
  }

  TEST_CASE("ties go to the lower index") {
    const std::vector<float> head = {1.0f, 0.0f};
    const auto body = body_from_rows({at_cosine(0.3), at_cosine(0.3), at_cosine(0.3), at_cosine(0.3)});
    CHECK(top_k_similar(head, body, 3).indices == std::vector<std::size_t>{0, 1, 2});
  }

  TEST_CASE("zero-norm sentences rank last") {
    const std::vector<float> head = {1.0f, 0.0f};
    const auto body = body_from_rows({{0.0f, 0.0f}, at_cosine(-0.9)});
    CHECK(top_k_similar(head, body, 2).indices == std::vector<std::size_t>{1, 0});
  }

  TEST_CASE("padded rows never influence the selection") {
    Rng rng(5);
    for (int trial = 0; trial < 50; ++trial) {
      const auto head = bait::testing::gaussian(rng, 6);
      std::vector<std::vector<float>> rows;
      for (std::size_t r = 0; r < 1 + rng.below(6); ++r) rows.push_back(bait::testing::gaussian(rng, 6));
      auto body = body_from_rows(rows, 10);
      const TopK before = top_k_similar(head, body, 4);
      for (std::size_t r = body.length; r < body.matrix.rows(); ++r) {
        for (auto& x : body.matrix.row(r)) x = static_cast<float>(rng.normal() * 100);
      }
      CHECK(top_k_similar(head, body, 4).indices == before.indices);
    }
  }

  TEST_CASE("rejects k = 0 and width mismatches") {
    const auto body = body_from_rows({at_cosine(0.5)});
    const std::vector<float> head = {1.0f, 0.0f};
    CHECK_THROWS_AS(top_k_similar(head, body, 0), bait::ParameterError);
    const std::vector<float> wide = {1.0f, 0.0f, 0.0f};
    CHECK_THROWS_AS(top_k_similar(wide, body, 1), bait::DimensionError);
  }
}

TEST_SUITE("forward passes") {
  TEST_CASE("relatednet outputs complementary probabilities") {
    auto corpus = bait::testing::make_synthetic_corpus(small_options(20, 2, kAll));
    const auto bank = corpus->bank();
    RelatedNetConfig config{6, 3, 8, 5, 0.2};
    Rng rng(1);
    const auto params = RelatedNet::create<float>(config, rng);
    for (const auto& s : corpus->samples) {
      const auto in = bank.prepare(s.headline_id, s.body_id, Views::kSim);
      bait::nn::Tape tape;
      const SampleInput* batch[] = {&in};
      const auto p = RelatedNet::forward<float>(tape, params, nullptr, config, batch,
                                                Mode::kInference, rng);
      const double a = tape.value(p)(0, 0), b = tape.value(p)(0, 1);
      CHECK(a > 0.0);
      CHECK(b > 0.0);
      CHECK(std::abs(a + b - 1.0) < 1e-6);
      CHECK(relatednet_probability(params, config, in) == doctest::Approx(b).epsilon(1e-7));
    }
  }

  TEST_CASE("default-size relatednet runs on full-width embeddings") {
    bait::testing::SyntheticOptions o;
    o.samples = 2;
    o.sim_dim = 384;
    o.nli_dim = 768;
    auto corpus = bait::testing::make_synthetic_corpus(o);
    const auto bank = corpus->bank();
    Rng rng(1);
    const auto params = RelatedNet::create<float>(RelatedNetConfig{}, rng);
    const double p = relatednet_probability(params, RelatedNetConfig{},
                                            bank.prepare(0, 0, Views::kSim));
    CHECK(p > 0.0);
    CHECK(p < 1.0);
  }

  TEST_CASE("padded-row content leaves every model unchanged") {
    auto corpus = bait::testing::make_synthetic_corpus(small_options(10, 4, kRelatedOnly));
    const auto bank = corpus->bank();
    Rng rng(2);
    RelatedNetConfig rc{6, 2, 6, 4, 0.0};
    TopKNetConfig tc{6, 7, 2, 6, 4, 0.0};
    AgreemNetConfig ac{6, 7, 2, 3, 3, 6, 4, 0.0};
    const auto rp = RelatedNet::create<float>(rc, rng);
    const auto tp = TopKNet::create<float>(tc, rng);
    const auto ap = AgreemNet::create<float>(ac, rng);
    for (const auto& s : corpus->samples) {
      auto in = bank.prepare(s.headline_id, s.body_id, Views::kBoth);
      const double r0 = relatednet_probability(rp, rc, in);
      const auto t0 = stage2_distribution<TopKNet>(tp, tc, in);
      const auto a0 = stage2_distribution<AgreemNet>(ap, ac, in);
      for (auto* body : {&in.sim_body, &in.nli_body}) {
        for (std::size_t r = body->length; r < body->matrix.rows(); ++r) {
          for (auto& x : body->matrix.row(r)) x = static_cast<float>(rng.normal() * 50);
        }
      }
      CHECK(relatednet_probability(rp, rc, in) == r0);
      CHECK(stage2_distribution<TopKNet>(tp, tc, in) == t0);
      CHECK(stage2_distribution<AgreemNet>(ap, ac, in) == a0);
      CHECK(std::abs(std::accumulate(t0.begin(), t0.end(), 0.0) - 1.0) < 1e-6);
      CHECK(std::abs(std::accumulate(a0.begin(), a0.end(), 0.0) - 1.0) < 1e-6);
    }
  }

  TEST_CASE("topknet gathers the NLI rows that top-k selection picks") {
    auto corpus = bait::testing::make_synthetic_corpus(small_options(10, 6, kRelatedOnly));
    const auto bank = corpus->bank();
    TopKNetConfig tc{6, 7, 3, 4, 4, 0.0};
    for (const auto& s : corpus->samples) {
      const auto in = bank.prepare(s.headline_id, s.body_id, Views::kBoth);
      const SampleInput* batch[] = {&in};
      const auto x = topknet_inputs(batch, tc);
      const auto top = top_k_similar(in.sim_head, in.sim_body, 3);
      for (std::size_t d = 0; d < 7; ++d) CHECK(x(0, d) == in.nli_head[d]);
      for (std::size_t j = 0; j < 3; ++j) {
        for (std::size_t d = 0; d < 7; ++d) {
          CHECK(x(0, (j + 1) * 7 + d) == in.nli_body.matrix(top.indices[j], d));
        }
      }
    }
  }

  TEST_CASE("agreemnet composes attention, head and cosine before the classifier") {
    auto corpus = bait::testing::make_synthetic_corpus(small_options(6, 8, kRelatedOnly));
    const auto bank = corpus->bank();
    AgreemNetConfig ac{6, 7, 2, 3, 4, 5, 4, 0.0};
    Rng rng(9);
    const auto params = AgreemNet::create<float>(ac, rng);
    for (const auto& s : corpus->samples) {
      const auto in = bank.prepare(s.headline_id, s.body_id, Views::kBoth);
      const auto attended = bait::nn::multihead_attention<float>(
          in.sim_head, in.sim_body.matrix, in.nli_body.matrix, in.sim_body.mask, params.attention);
      bait::nn::Matrix x(1, ac.classifier_input_dim());
      for (std::size_t d = 0; d < 7; ++d) {
        x(0, d) = attended.attended[d];
        x(0, 7 + d) = in.nli_head[d];
      }
      x(0, 14) = static_cast<float>(
          bait::nn::cosine_similarity<float>(in.nli_head, attended.attended).value);
      for (std::size_t l = 0; l < params.mlp.layers.size(); ++l) {
        x = bait::nn::dense_forward(x, params.mlp.layers[l]);
        if (l + 1 < params.mlp.layers.size()) x = bait::nn::relu(x);
      }
      const auto expected = bait::nn::softmax<float>(x.row(0));
      const auto got = stage2_distribution<AgreemNet>(params, ac, in);
      for (std::size_t c = 0; c < 3; ++c) CHECK(got[c] == doctest::Approx(expected[c]).epsilon(1e-5));
    }
  }

  TEST_CASE("stage-2 models reject bodies whose masks disagree") {
    auto corpus = bait::testing::make_synthetic_corpus(small_options(2, 8, kRelatedOnly));
    const auto bank = corpus->bank();
    auto in = bank.prepare(0, 0, Views::kBoth);
    in.nli_body.mask[in.nli_body.length] = true;
    CHECK_THROWS_AS(check_matching_masks(in), bait::IntegrityError);
    Rng rng(1);
    TopKNetConfig tc{6, 7, 2, 4, 4, 0.0};
    const auto tp = TopKNet::create<float>(tc, rng);
    CHECK_THROWS_AS(stage2_distribution<TopKNet>(tp, tc, in), bait::IntegrityError);
  }

  TEST_CASE("stage-2 labels exclude unrelated") {
    CHECK(stage2_label(Stance::kAgree) == 0);
    CHECK(stage2_label(Stance::kDisagree) == 1);
    CHECK(stage2_label(Stance::kDiscuss) == 2);
    CHECK_THROWS_AS(stage2_label(Stance::kUnrelated), bait::ContractError);
  }
}

namespace {

template <typename Model>
void check_model_gradients(const typename Model::Config& config, std::array<double, 4> mix,
                           std::vector<double> weights) {
  std::size_t accepted = 0;
  for (std::uint64_t seed = 1; accepted < 10 && seed < 200; ++seed) {
    const double err = bait::testing::gradient_error<Model>(config, seed, mix, weights);
    if (std::isnan(err)) continue;
    ++accepted;
    CAPTURE(seed);
    CHECK(err < 1e-4);
  }
  CHECK(accepted == 10);
}

}  // namespace

TEST_SUITE("gradients") {
  TEST_CASE("relatednet analytic gradients match finite differences") {
    check_model_gradients<RelatedNet>(RelatedNetConfig{6, 2, 5, 4, 0.25}, kAll, {1.3, 0.7});
  }
  TEST_CASE("topknet analytic gradients match finite differences") {
    check_model_gradients<TopKNet>(TopKNetConfig{6, 7, 2, 5, 4, 0.25}, kRelatedOnly,
                                   {0.5, 2.0, 1.0});
  }
  TEST_CASE("agreemnet analytic gradients match finite differences") {
    check_model_gradients<AgreemNet>(AgreemNetConfig{6, 7, 2, 3, 3, 5, 4, 0.25}, kRelatedOnly,
                                     {0.5, 2.0, 1.0});
  }
}

TEST_SUITE("training") {
  TEST_CASE("relatednet fits a separable synthetic set") {
    auto o = small_options(200, 21, {1, 1, 1, 3});
    o.sim_dim = 16;
    auto corpus = bait::testing::make_synthetic_corpus(o);
    const auto bank = corpus->bank();
    TrainingConfig tc;
    tc.epochs = 50;
    tc.patience = 0;
    tc.batch_size = 16;
    tc.learning_rate = 3e-3;
    const auto trained = train_model<RelatedNet>(bank, corpus->samples, corpus->samples,
                                                 RelatedNetConfig{16, 3, 32, 16, 0.1}, tc, 7);
    const auto probs = predict_probabilities<RelatedNet>(bank, corpus->samples, trained.params,
                                                         RelatedNetConfig{16, 3, 32, 16, 0.1});
    std::size_t correct = 0;
    for (std::size_t i = 0; i < corpus->samples.size(); ++i) {
      correct += argmax(probs.row(i)) == RelatedNet::label_of(corpus->samples[i].stance);
    }
    CHECK(static_cast<double>(correct) / 200.0 >= 0.99);
  }

  TEST_CASE("stage-2 models fit a separable three-class set") {
    auto o = small_options(150, 22, kRelatedOnly);
    o.nli_dim = 16;
    auto corpus = bait::testing::make_synthetic_corpus(o);
    const auto bank = corpus->bank();
    TrainingConfig tc;
    tc.epochs = 50;
    tc.patience = 0;
    tc.batch_size = 16;
    tc.learning_rate = 3e-3;
    const TopKNetConfig kc{6, 16, 2, 32, 16, 0.1};
    const auto tk = train_model<TopKNet>(bank, corpus->samples, corpus->samples, kc, tc, 3);
    const AgreemNetConfig ac{6, 16, 2, 8, 8, 32, 16, 0.1};
    const auto ag = train_model<AgreemNet>(bank, corpus->samples, corpus->samples, ac, tc, 3);
    const auto pk = predict_probabilities<TopKNet>(bank, corpus->samples, tk.params, kc);
    const auto pa = predict_probabilities<AgreemNet>(bank, corpus->samples, ag.params, ac);
    std::size_t ck = 0, ca = 0;
    for (std::size_t i = 0; i < corpus->samples.size(); ++i) {
      const auto gold = stage2_label(corpus->samples[i].stance);
      ck += argmax(pk.row(i)) == gold;
      ca += argmax(pa.row(i)) == gold;
    }
    CHECK(static_cast<double>(ck) / 150.0 >= 0.99);
    CHECK(static_cast<double>(ca) / 150.0 >= 0.99);
  }

  TEST_CASE("training is deterministic for a fixed seed") {
    auto corpus = bait::testing::make_synthetic_corpus(small_options(60, 23, kAll));
    const auto bank = corpus->bank();
    TrainingConfig tc;
    tc.epochs = 4;
    tc.batch_size = 8;
    const RelatedNetConfig rc{6, 2, 8, 4, 0.3};
    const std::span<const SamplePair> all(corpus->samples);
    const auto a = train_model<RelatedNet>(bank, all.first(40), all.subspan(40), rc, tc, 99);
    const auto b = train_model<RelatedNet>(bank, all.first(40), all.subspan(40), rc, tc, 99);
    REQUIRE(a.log.size() == b.log.size());
    for (std::size_t e = 0; e < a.log.size(); ++e) CHECK(a.log[e].train_loss == b.log[e].train_loss);
    CHECK(a.params.layers.back().weight == b.params.layers.back().weight);
  }

  TEST_CASE("unit class weights reproduce the unweighted trajectory exactly") {
    auto corpus = bait::testing::make_synthetic_corpus(small_options(40, 24, kRelatedOnly));
    const auto bank = corpus->bank();
    TrainingConfig plain;
    plain.epochs = 3;
    plain.batch_size = 8;
    TrainingConfig ones = plain;
    ones.class_weights = {1.0, 1.0, 1.0};
    const TopKNetConfig kc{6, 7, 2, 8, 4, 0.2};
    const auto a = train_model<TopKNet>(bank, corpus->samples, corpus->samples, kc, plain, 5);
    const auto b = train_model<TopKNet>(bank, corpus->samples, corpus->samples, kc, ones, 5);
    for (std::size_t e = 0; e < a.log.size(); ++e) CHECK(a.log[e].train_loss == b.log[e].train_loss);
    for (std::size_t l = 0; l < a.params.layers.size(); ++l) {
      CHECK(a.params.layers[l].weight == b.params.layers[l].weight);
    }
  }

  TEST_CASE("balanced weighting derives weights from training counts") {
    TrainingConfig tc;
    tc.weighted_loss = true;
    const std::vector<std::size_t> labels = {0, 0, 0, 1};
    const auto w = resolve_class_weights(tc, labels, 2);
    CHECK(w[0] == doctest::Approx(4.0 / 6.0));
    CHECK(w[1] == doctest::Approx(2.0));
  }

  TEST_CASE("contract violations") {
    auto corpus = bait::testing::make_synthetic_corpus(small_options(20, 25, kAll));
    const auto bank = corpus->bank();
    TrainingConfig tc;
    tc.epochs = 1;
    const TopKNetConfig kc{6, 7, 2, 4, 4, 0.0};
    CHECK_THROWS_AS(train_model<TopKNet>(bank, corpus->samples, corpus->samples, kc, tc, 1),
                    bait::ContractError);
    const std::vector<SamplePair> none;
    CHECK_THROWS_AS(train_model<RelatedNet>(bank, none, corpus->samples, RelatedNetConfig{6, 2, 4, 4, 0.0}, tc, 1),
                    bait::ParameterError);
  }

  TEST_CASE("unweighted average class accuracy") {
    const std::vector<std::size_t> gold = {0, 0, 1, 2};
    const std::vector<std::size_t> pred = {0, 1, 1, 1};
    CHECK(unweighted_average_accuracy(gold, pred, 3) == doctest::Approx((0.5 + 1.0 + 0.0) / 3));
    CHECK(argmax(std::vector<float>{0.2f, 0.4f, 0.4f}) == 1);
  }
}

TEST_SUITE("threshold baseline") {
  TEST_CASE("perfectly separated scores give F1 = 1") {
    const std::vector<double> scores = {0.9, 0.1, 0.9, 0.1, 0.9};
    const bool related[] = {true, false, true, false, true};
    const auto r = best_threshold(scores, related);
    CHECK(r.f1 == 1.0);
    CHECK(r.threshold == 0.9);
  }

  TEST_CASE("identical scores give the all-related F1") {
    const std::vector<double> scores(6, 0.4);
    const bool related[] = {true, false, false, true, false, false};
    // precision 2/6, recall 1
    CHECK(best_threshold(scores, related).f1 == doctest::Approx(2 * (2.0 / 6) / (2.0 / 6 + 1)));
  }

  TEST_CASE("sweep matches an exhaustive oracle") {
    Rng rng(31);
    for (int trial = 0; trial < 50; ++trial) {
      const std::size_t n = 1 + rng.below(30);
      std::vector<double> scores(n);
      std::unique_ptr<bool[]> rel(new bool[n]);
      for (std::size_t i = 0; i < n; ++i) {
        scores[i] = static_cast<double>(rng.below(8)) / 8.0;
        rel[i] = rng.below(2) == 1;
      }
      double best = 0.0;
      for (double t : scores) {
        double tp = 0, fp = 0, fn = 0;
        for (std::size_t i = 0; i < n; ++i) {
          const bool p = scores[i] >= t;
          tp += p && rel[i];
          fp += p && !rel[i];
          fn += !p && rel[i];
        }
        if (tp > 0) best = std::max(best, 2 * tp / (2 * tp + fp + fn));
      }
      CHECK(best_threshold(scores, std::span<const bool>(rel.get(), n)).f1 ==
            doctest::Approx(best).epsilon(1e-12));
    }
  }

  TEST_CASE("empty input is rejected") {
    CHECK_THROWS_AS(best_threshold({}, {}), bait::ParameterError);
  }

  TEST_CASE("baseline over a synthetic dataset separates related pairs") {
    auto o = small_options(200, 41, {1, 1, 1, 3});
    o.sim_dim = 32;
    auto corpus = bait::testing::make_synthetic_corpus(o);
    const auto r = threshold_baseline(corpus->bank(), corpus->samples, 5);
    CHECK(r.f1 > 0.9);
  }
}

TEST_SUITE("checkpoints") {
  template <typename Model>
  void round_trip(const typename Model::Config& config) {
    Rng rng(4);
    const auto params = Model::template create<float>(config, rng);
    const auto path = std::filesystem::temp_directory_path() /
                      (std::string("bait_ckpt_") + Model::kName + ".bin");
    save_checkpoint<Model>(path, config, params);
    CHECK(checkpoint_kind(path) == Model::kKind);
    const auto loaded = load_checkpoint<Model>(path);
    CHECK(encode_config(loaded.config) == encode_config(config));
    std::vector<std::vector<float>> a, b;
    params.for_each_tensor([&](std::span<const float> t) { a.emplace_back(t.begin(), t.end()); });
    loaded.params.for_each_tensor([&](std::span<const float> t) { b.emplace_back(t.begin(), t.end()); });
    CHECK(a == b);
    std::filesystem::remove(path);
  }

  TEST_CASE("every model kind survives a round trip") {
    round_trip<RelatedNet>(RelatedNetConfig{6, 2, 300, 7, 0.277});
    round_trip<TopKNet>(TopKNetConfig{6, 7, 3, 5, 4, 0.301});
    round_trip<AgreemNet>(AgreemNetConfig{6, 7, 3, 4, 5, 6, 3, 0.105});
  }

  TEST_CASE("loading as the wrong kind fails") {
    Rng rng(4);
    const TopKNetConfig config{6, 7, 3, 5, 4, 0.3};
    const auto path = std::filesystem::temp_directory_path() / "bait_ckpt_kind.bin";
    save_checkpoint<TopKNet>(path, config, TopKNet::create<float>(config, rng));
    CHECK_THROWS_AS(load_checkpoint<AgreemNet>(path), bait::FormatError);
    CHECK_THROWS_AS(load_checkpoint<RelatedNet>(path), bait::FormatError);
    std::filesystem::remove(path);
  }

  TEST_CASE("tampered tensor records are detected") {
    Rng rng(4);
    const RelatedNetConfig config{6, 2, 5, 4, 0.2};
    auto frame = encode_checkpoint<RelatedNet>(config, RelatedNet::create<float>(config, rng));
    frame.records.pop_back();
    frame.header.record_count -= 1;
    CHECK_THROWS_AS(decode_checkpoint<RelatedNet>(frame, "tampered"), bait::FormatError);
    auto bytes = bait::data::encode_frame(
        encode_checkpoint<RelatedNet>(config, RelatedNet::create<float>(config, rng)));
    bytes.resize(bytes.size() - 3);
    CHECK_THROWS_AS(bait::data::parse_frame(bytes, "short"), bait::FormatError);
  }
}

TEST_SUITE("pipeline") {
  using S = Stance;

  TEST_CASE("gating rule") {
    const std::vector<double> any = {0.3, 0.3, 0.4};
    CHECK(gate(0.1, any, 0.5) == S::kUnrelated);
    CHECK(gate(0.9, std::vector<double>{0.2, 0.7, 0.1}, 0.5) == S::kDisagree);
    CHECK(gate(0.5, std::vector<double>{0.2, 0.2, 0.6}, 0.5) == S::kDiscuss);
    CHECK(gate(0.7, std::vector<double>{0.4, 0.4, 0.2}, 0.5) == S::kAgree);
    CHECK(gate(0.7, std::vector<double>{0.2, 0.4, 0.4}, 0.5) == S::kDisagree);
  }

  TEST_CASE("fnc score worked examples") {
    CHECK(std::abs(fnc_score(std::vector{S::kUnrelated, S::kDiscuss},
                             std::vector{S::kUnrelated, S::kAgree}) - 40.0) < 1e-9);
    const std::vector gold = {S::kAgree, S::kUnrelated, S::kDiscuss, S::kDisagree};
    CHECK(std::abs(fnc_score(gold, gold) - 100.0) < 1e-9);
    CHECK(std::abs(fnc_score(std::vector{S::kUnrelated, S::kUnrelated},
                             std::vector{S::kUnrelated, S::kAgree}) - 20.0) < 1e-9);
  }

  TEST_CASE("all-unrelated predictions follow the closed form") {
    Rng rng(8);
    for (int trial = 0; trial < 100; ++trial) {
      const std::size_t n = 1 + rng.below(200);
      std::vector<S> gold;
      std::size_t unrelated = 0;
      for (std::size_t i = 0; i < n; ++i) {
        gold.push_back(bait::data::kAllStances[rng.below(4)]);
        unrelated += gold.back() == S::kUnrelated;
      }
      const std::vector<S> pred(n, S::kUnrelated);
      const double expected = 25.0 * double(unrelated) / (0.25 * double(unrelated) + double(n - unrelated));
      CHECK(std::abs(fnc_score(pred, gold) - expected) < 1e-9);
    }
  }

  TEST_CASE("evaluate hand count") {
    const auto r = evaluate(std::vector{S::kUnrelated, S::kAgree, S::kAgree},
                            std::vector{S::kUnrelated, S::kUnrelated, S::kAgree});
    CHECK(r.per_class_accuracy[3] == doctest::Approx(0.5));
    CHECK(r.per_class_accuracy[0] == doctest::Approx(1.0));
    CHECK(std::isnan(r.per_class_accuracy[1]));
    CHECK(r.overall_accuracy == doctest::Approx(2.0 / 3.0));
    CHECK(r.confusion[3][0] == 1);
  }

  TEST_CASE("confusion rows sum to gold counts and evaluation is order-free") {
    Rng rng(12);
    std::vector<S> gold, pred;
    std::array<std::size_t, 4> counts{};
    for (int i = 0; i < 500; ++i) {
      gold.push_back(bait::data::kAllStances[rng.below(4)]);
      pred.push_back(bait::data::kAllStances[rng.below(4)]);
      ++counts[bait::data::index_of(gold.back())];
    }
    const auto m = confusion_matrix(pred, gold);
    for (std::size_t g = 0; g < 4; ++g) {
      CHECK(std::accumulate(m[g].begin(), m[g].end(), std::size_t{0}) == counts[g]);
    }
    const auto a = evaluate(pred, gold);
    std::vector<std::size_t> order(500);
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order.begin(), order.end());
    std::vector<S> g2, p2;
    for (auto i : order) {
      g2.push_back(gold[i]);
      p2.push_back(pred[i]);
    }
    const auto b = evaluate(p2, g2);
    CHECK(a.confusion == b.confusion);
    CHECK(a.fnc_score == doctest::Approx(b.fnc_score).epsilon(1e-12));
  }

  TEST_CASE("single disagreement fills one cell") {
    const auto m = confusion_matrix(std::vector{S::kDisagree}, std::vector{S::kAgree});
    std::size_t nonzero = 0;
    for (const auto& row : m) for (auto v : row) nonzero += v != 0;
    CHECK(nonzero == 1);
    CHECK(m[0][1] == 1);
  }

  TEST_CASE("length mismatch and empty input") {
    CHECK_THROWS_AS(evaluate(std::vector{S::kAgree}, std::vector<S>{}), bait::ContractError);
    CHECK_THROWS_AS(fnc_score(std::vector<S>{}, std::vector<S>{}), bait::ParameterError);
  }

  TEST_CASE("report json keys and class order") {
    const auto r = evaluate(std::vector{S::kAgree, S::kUnrelated}, std::vector{S::kAgree, S::kUnrelated});
    const auto json = nlohmann::json::parse(report_json(r));
    CHECK(json.contains("per_class_accuracy"));
    CHECK(json["per_class_accuracy"]["AGR"] == 1.0);
    CHECK(json["per_class_accuracy"]["DSG"].is_null());
    CHECK(json["overall_accuracy"] == 1.0);
    CHECK(json["fnc_score"] == 100.0);
    CHECK(json["confusion_matrix"][3][3] == 1);
  }

  TEST_CASE("batched prediction matches single-sample prediction") {
    auto corpus = bait::testing::make_synthetic_corpus(small_options(30, 51, kAll));
    const auto bank = corpus->bank();
    Rng rng(3);
    BaitModel model;
    model.related_config = {6, 2, 6, 4, 0.0};
    model.related = RelatedNet::create<float>(model.related_config, rng);
    for (auto kind : {ModelKind::kTopKNet, ModelKind::kAgreemNet}) {
      model.stage2_kind = kind;
      model.topk_config = {6, 7, 2, 6, 4, 0.0};
      model.topk = TopKNet::create<float>(model.topk_config, rng);
      model.agreem_config = {6, 7, 2, 3, 3, 6, 4, 0.0};
      model.agreem = AgreemNet::create<float>(model.agreem_config, rng);
      for (double tau : {0.0, 0.5, 1.01}) {
        model.threshold = tau;
        const auto pairs = unlabeled(corpus->samples);
        const auto all = bait_predict_all(bank, pairs, model);
        for (std::size_t i = 0; i < pairs.size(); ++i) {
          const auto in = bank.prepare(pairs[i].headline_id, pairs[i].body_id, Views::kBoth);
          CHECK(bait_predict(in, model) == all[i]);
          const double p = relatednet_probability(model.related, model.related_config, in);
          CHECK((all[i] == S::kUnrelated) == (p < tau));
        }
      }
    }
  }

  TEST_CASE("prediction requires every view") {
    auto corpus = bait::testing::make_synthetic_corpus(small_options(2, 52, kAll));
    const auto in = corpus->bank().prepare(0, 0, Views::kSim);
    CHECK_THROWS_AS(bait_predict(in, BaitModel{}), bait::IntegrityError);
  }
}
