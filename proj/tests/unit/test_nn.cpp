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
#include <numeric>
#include <vector>

#include "bait/nn/adam.hpp"
#include "bait/nn/ops.hpp"
#include "bait/nn/tape.hpp"
#include "support/attention_oracle.hpp"
#include "support/gradcheck.hpp"

using namespace bait;
using namespace bait::nn;
using bait::testing::identity;
using bait::testing::identity_attention;
using bait::testing::weighted_sum_oracle;

namespace {

template <typename T>
BasicMatrix<T> random_matrix(Rng& rng, std::size_t r, std::size_t c, double scale = 1.0) {
  BasicMatrix<T> m(r, c);
  for (auto& v : m.values()) v = static_cast<T>(scale * (2.0 * rng.uniform() - 1.0));
  return m;
}

// Naive triple loop, y = x W^T + b.
Matrix matmul_oracle(const Matrix& x, const Matrix& w, const std::vector<float>& b) {
  Matrix y(x.rows(), w.rows());
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < w.rows(); ++j) {
      double acc = b[j];
      for (std::size_t k = 0; k < x.cols(); ++k) acc += double(x(i, k)) * double(w(j, k));
      y(i, j) = static_cast<float>(acc);
    }
  return y;
}

}  // namespace

TEST_SUITE("dense_forward") {
  TEST_CASE("identity weights") {
    DenseLayerParams layer(2, 2);
    layer.weight = Matrix{{1, 0}, {0, 1}};
    CHECK(dense_forward(Matrix{{1, 2}}, layer) == Matrix{{1, 2}});
  }
  TEST_CASE("analytic single output") {
    DenseLayerParams layer(2, 1);
    layer.weight = Matrix{{2, 3}};
    layer.bias = {1};
    CHECK(dense_forward(Matrix{{1, 1}}, layer)(0, 0) == 6.0f);
  }
  TEST_CASE("matches naive matmul") {
    Rng rng(1);
    Matrix x = random_matrix<float>(rng, 4, 8);
    DenseLayerParams layer(8, 5);
    layer.init(rng);
    for (auto& b : layer.bias) b = static_cast<float>(rng.uniform());
    const Matrix got = dense_forward(x, layer);
    const Matrix want = matmul_oracle(x, layer.weight, layer.bias);
    for (std::size_t i = 0; i < got.size(); ++i) CHECK(std::abs(got.values()[i] - want.values()[i]) < 1e-6);
  }
  TEST_CASE("shape mismatch names both shapes") {
    DenseLayerParams layer(3, 2);
    try {
      dense_forward(Matrix(1, 2), layer);
      FAIL("expected DimensionError");
    } catch (const DimensionError& e) {
      const std::string msg = e.what();
      CHECK(msg.find("(1x2)") != std::string::npos);
      CHECK(msg.find("(2x3)") != std::string::npos);
    }
  }
}

TEST_CASE("relu") {
  CHECK(relu(Matrix{{-1, 0, 2}}) == Matrix{{0, 0, 2}});
  CHECK(relu(Matrix{{-1, -2, -0.5f}}) == Matrix{{0, 0, 0}});
  CHECK(relu(Matrix{{1, 2, 0.5f}}) == Matrix{{1, 2, 0.5f}});
}

TEST_SUITE("dropout") {
  TEST_CASE("p = 0 in training is the identity") {
    Rng rng(3);
    Matrix x = random_matrix<float>(rng, 3, 7);
    CHECK(dropout(x, 0.0, true, rng) == x);
  }
  TEST_CASE("inference is the bitwise identity for any p") {
    Rng rng(4);
    Matrix x = random_matrix<float>(rng, 5, 9);
    for (double p : {0.1, 0.5, 0.9}) CHECK(dropout(x, p, false, rng) == x);
  }
  TEST_CASE("inverted scaling preserves the mean") {
    Rng rng(5);
    Matrix ones(1, 100000, 1.0f);
    Matrix y = dropout(ones, 0.5, true, rng);
    double mean = 0;
    for (float v : y.values()) mean += v;
    mean /= 100000.0;
    CHECK(std::abs(mean - 1.0) < 0.02);
  }
  TEST_CASE("p outside [0,1) is rejected") {
    Rng rng(6);
    CHECK_THROWS_AS(dropout(Matrix(1, 1), 1.0, true, rng), ParameterError);
    CHECK_THROWS_AS(dropout(Matrix(1, 1), -0.1, false, rng), ParameterError);
  }
}

TEST_SUITE("softmax") {
  TEST_CASE("examples") {
    std::vector<float> a{0, 0};
    auto s = softmax(std::span<const float>(a));
    CHECK(s[0] == doctest::Approx(0.5));
    std::vector<double> b{std::log(2.0), 0};
    auto t = softmax(std::span<const double>(b));
    CHECK(t[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(t[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  }
  TEST_CASE("property: sums to one and is shift invariant") {
    Rng rng(7);
    for (int trial = 0; trial < 500; ++trial) {
      std::vector<float> x(1 + rng.below(12));
      for (auto& v : x) v = static_cast<float>(20.0 * rng.uniform() - 10.0);
      auto shifted = x;
      for (auto& v : shifted) v += 1000.0f;
      const auto s = softmax(std::span<const float>(x));
      const auto s2 = softmax(std::span<const float>(shifted));
      double sum = 0;
      for (std::size_t i = 0; i < s.size(); ++i) {
        sum += s[i];
        CHECK(s[i] > 0.0f);
      }
      CHECK(std::abs(sum - 1.0) < 1e-6);
      // +1000 in binary32 quantizes the inputs to 2^-14; compare on the
      // already-representable shift of the float inputs.
      std::vector<float> requant(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) requant[i] = shifted[i] - 1000.0f;
      const auto s3 = softmax(std::span<const float>(requant));
      for (std::size_t i = 0; i < s.size(); ++i) CHECK(std::abs(s2[i] - s3[i]) < 1e-6);
    }
  }
  TEST_CASE("shift by +1000 on exactly representable inputs") {
    std::vector<float> x{0.5f, -1.25f, 3.0f};
    std::vector<float> y{1000.5f, 998.75f, 1003.0f};
    const auto a = softmax(std::span<const float>(x));
    const auto b = softmax(std::span<const float>(y));
    for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(a[i] - b[i]) < 1e-6);
  }
}

TEST_SUITE("weighted_cross_entropy") {
  TEST_CASE("examples") {
    std::vector<float> one{1, 0}, w{1, 1};
    CHECK(std::abs(weighted_cross_entropy(std::span<const float>(one), 0,
                                          std::span<const float>(w))) < 1e-9);
    std::vector<double> uni{1.0 / 3, 1.0 / 3, 1.0 / 3}, w3{1, 1, 1}, w3b{2, 2, 2};
    for (std::size_t l = 0; l < 3; ++l) {
      const double base =
          weighted_cross_entropy(std::span<const double>(uni), l, std::span<const double>(w3));
      CHECK(base == doctest::Approx(std::log(3.0)).epsilon(1e-9));
      CHECK(weighted_cross_entropy(std::span<const double>(uni), l, std::span<const double>(w3b)) ==
            doctest::Approx(2 * base).epsilon(1e-12));
    }
  }
  TEST_CASE("label out of range") {
    std::vector<float> p{0.5f, 0.5f}, w{1, 1};
    CHECK_THROWS_AS(weighted_cross_entropy(std::span<const float>(p), 2, std::span<const float>(w)),
                    IndexError);
  }
}

TEST_SUITE("cosine_similarity") {
  TEST_CASE("examples") {
    auto cs = [](std::vector<float> a, std::vector<float> b) {
      return cosine_similarity(std::span<const float>(a), std::span<const float>(b));
    };
    CHECK(cs({1, 0}, {0, 1}).value == doctest::Approx(0.0));
    CHECK(cs({1, 2}, {2, 4}).value == doctest::Approx(1.0));
    CHECK(cs({1, 0}, {-1, 0}).value == doctest::Approx(-1.0));
    const auto deg = cs({0, 0}, {1, 1});
    CHECK(deg.degenerate);
    CHECK(deg.value == 0.0);
    CHECK_THROWS_AS(cs({1}, {1, 2}), DimensionError);
  }
  TEST_CASE("property: symmetric and scale invariant") {
    Rng rng(8);
    for (int trial = 0; trial < 500; ++trial) {
      const std::size_t n = 1 + rng.below(40);
      std::vector<float> u(n), v(n), cu(n);
      const float c = static_cast<float>(0.01 + 100.0 * rng.uniform());
      for (std::size_t i = 0; i < n; ++i) {
        u[i] = static_cast<float>(rng.normal());
        v[i] = static_cast<float>(rng.normal());
        cu[i] = c * u[i];
      }
      const double uv = cosine_similarity(std::span<const float>(u), std::span<const float>(v)).value;
      const double vu = cosine_similarity(std::span<const float>(v), std::span<const float>(u)).value;
      const double cuv = cosine_similarity(std::span<const float>(cu), std::span<const float>(v)).value;
      CHECK(uv == vu);
      CHECK(std::abs(uv - cuv) < 1e-6);
      CHECK(uv >= -1.0);
      CHECK(uv <= 1.0);
    }
  }
}

TEST_SUITE("multihead_attention") {
  TEST_CASE("equal keys give the unweighted mean of values") {
    Rng rng(9);
    const std::size_t d = 6, L = 5;
    Matrix keys(L, d);
    const Matrix k0 = random_matrix<float>(rng, 1, d);
    for (std::size_t i = 0; i < L; ++i)
      std::copy(k0.row(0).begin(), k0.row(0).end(), keys.row(i).begin());
    const Matrix values = random_matrix<float>(rng, L, d);
    const Matrix q = random_matrix<float>(rng, 1, d);
    std::vector<bool> mask(L, true);
    auto r = multihead_attention(q.row(0), keys, values, mask, identity_attention(d));
    for (std::size_t c = 0; c < d; ++c) {
      double mean = 0;
      for (std::size_t i = 0; i < L; ++i) mean += values(i, c);
      CHECK(r.attended[c] == doctest::Approx(mean / L).epsilon(1e-6));
    }
  }
  TEST_CASE("a key aligned with a large scaled query dominates") {
    const std::size_t d = 4;
    std::vector<float> q{1, 0, 0, 0};
    Matrix keys{{50, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}};
    Matrix values{{1, 2, 3, 4}, {-5, 6, 7, 8}, {9, -1, 2, 0}};
    std::vector<bool> mask(3, true);
    auto r = multihead_attention(std::span<const float>(q), keys, values, mask,
                                 identity_attention(d));
    for (std::size_t c = 0; c < d; ++c) CHECK(std::abs(r.attended[c] - values(0, c)) < 1e-3);
  }
  TEST_CASE("property: identity single head equals the weighted-sum loop") {
    Rng rng(10);
    for (int trial = 0; trial < 100; ++trial) {
      const std::size_t d = 2 + rng.below(8), L = 1 + rng.below(12);
      const Matrix keys = random_matrix<float>(rng, L, d, 2.0);
      const Matrix values = random_matrix<float>(rng, L, d, 2.0);
      const Matrix q = random_matrix<float>(rng, 1, d, 2.0);
      std::vector<bool> mask(L);
      for (std::size_t i = 0; i < L; ++i) mask[i] = rng.uniform() < 0.7;
      mask[rng.below(L)] = true;
      auto r = multihead_attention(q.row(0), keys, values, mask, identity_attention(d));
      std::vector<double> qd(q.row(0).begin(), q.row(0).end());
      const auto want = weighted_sum_oracle(qd, keys, values, mask);
      for (std::size_t c = 0; c < d; ++c) CHECK(std::abs(r.attended[c] - want[c]) < 1e-6);
    }
  }
  TEST_CASE("property: weights are a distribution over unmasked keys") {
    Rng rng(11);
    for (int trial = 0; trial < 100; ++trial) {
      const std::size_t H = 1 + rng.below(4), L = 1 + rng.below(10);
      AttentionParams p(H, 3, 2, 5, 4, 6, 7);
      p.init(rng);
      const Matrix keys = random_matrix<float>(rng, L, 4);
      const Matrix values = random_matrix<float>(rng, L, 6);
      const Matrix q = random_matrix<float>(rng, 1, 5);
      std::vector<bool> mask(L);
      for (std::size_t i = 0; i < L; ++i) mask[i] = rng.uniform() < 0.5;
      mask[rng.below(L)] = true;
      auto r = multihead_attention(q.row(0), keys, values, mask, p);
      REQUIRE(r.weights.size() == H);
      CHECK(r.attended.size() == 7);
      for (const auto& w : r.weights) {
        double sum = 0;
        for (std::size_t i = 0; i < L; ++i) {
          if (!mask[i]) CHECK(w[i] == 0.0f);
          CHECK(w[i] >= 0.0f);
          sum += w[i];
        }
        CHECK(std::abs(sum - 1.0) < 1e-6);
      }
    }
  }
  TEST_CASE("fully masked keys are degenerate") {
    Matrix keys(2, 3), values(2, 3);
    std::vector<float> q{1, 2, 3};
    std::vector<bool> mask(2, false);
    CHECK_THROWS_AS(multihead_attention(std::span<const float>(q), keys, values, mask,
                                        identity_attention(3)),
                    DegenerateInputError);
  }
  TEST_CASE("projection shapes are validated") {
    AttentionParams p(2, 3, 3, 4, 4, 4, 4);
    p.value_proj = Matrix(5, 4);
    CHECK_THROWS_AS(p.validate(), DimensionError);
  }
}

TEST_SUITE("backward") {
  TEST_CASE("linear loss w.x has gradient x") {
    BasicDenseLayerParams<double> layer(4, 1), grads(4, 1);
    Rng rng(12);
    layer.init(rng);
    BasicTape<double> tape;
    BasicMatrix<double> x{{0.5, -1.0, 2.0, 0.25}};
    auto y = tape.dense(tape.constant(x), layer, &grads);
    tape.backward(y);
    for (std::size_t i = 0; i < 4; ++i) CHECK(grads.weight(0, i) == x(0, i));
    CHECK(grads.bias[0] == 1.0);
  }
  TEST_CASE("non-scalar loss is a contract error") {
    BasicTape<double> tape;
    auto v = tape.constant(BasicMatrix<double>(2, 1));
    CHECK_THROWS_AS(tape.backward(v), ContractError);
  }
  TEST_CASE("zero class weight gives zero gradient") {
    Rng rng(13);
    BasicDenseLayerParams<double> l1(5, 4), g1(5, 4), l2(4, 3), g2(4, 3);
    l1.init(rng);
    l2.init(rng);
    BasicTape<double> tape;
    auto x = tape.constant(random_matrix<double>(rng, 3, 5));
    auto h = tape.relu(tape.dense(x, l1, &g1));
    auto p = tape.softmax_rows(tape.dense(h, l2, &g2));
    auto loss = tape.weighted_nll(p, {1, 1, 1}, {1.0, 0.0, 1.0});
    tape.backward(loss);
    for (double g : g1.weight.values()) CHECK(g == 0.0);
    for (double g : g2.weight.values()) CHECK(g == 0.0);
    for (double g : g2.bias) CHECK(g == 0.0);
  }

  // Every differentiable tape op in one graph: dense, relu, dropout (fixed
  // mask via a fixed seed), attention, cosine, concat, softmax, weighted nll.
  struct MiniNet {
    BasicAttentionParams<double> attn;
    BasicDenseLayerParams<double> l1, l2;
    template <typename F>
    void for_each_tensor(F&& f) {
      attn.for_each_tensor(f);
      l1.for_each_tensor(f);
      l2.for_each_tensor(f);
    }
    template <typename F>
    void for_each_tensor(F&& f) const {
      attn.for_each_tensor(f);
      l1.for_each_tensor(f);
      l2.for_each_tensor(f);
    }
  };

  TEST_CASE("mixed graph matches finite differences") {
    for (int instance = 0; instance < 10; ++instance) {
      Rng rng(100 + instance);
      const std::size_t B = 3, L = 4, kd = 3, vd = 5, out = 5;
      MiniNet net{BasicAttentionParams<double>(2, 2, 3, kd, kd, vd, out),
                  BasicDenseLayerParams<double>(2 * out + 1, 6), BasicDenseLayerParams<double>(6, 3)};
      net.attn.init(rng);
      net.l1.init(rng);
      net.l2.init(rng);
      net.for_each_tensor([&](std::span<double> t) {
        for (auto& v : t)
          if (v == 0.0) v = 0.1 * (2 * rng.uniform() - 1);
      });
      std::vector<BasicMatrix<double>> keys, values, queries;
      std::vector<std::vector<bool>> masks;
      for (std::size_t b = 0; b < B; ++b) {
        keys.push_back(random_matrix<double>(rng, L, kd));
        values.push_back(random_matrix<double>(rng, L, vd));
        queries.push_back(random_matrix<double>(rng, 1, kd));
        std::vector<bool> m(L, true);
        m[L - 1] = b != 0;
        masks.push_back(m);
      }
      const BasicMatrix<double> heads = random_matrix<double>(rng, B, out);
      const std::vector<std::size_t> labels{0, 2, 1};
      const std::vector<double> weights{1.0, 2.5, 0.7};

      auto run = [&](MiniNet* grads, double* min_preact) {
        BasicTape<double> tape;
        std::vector<AttentionInput<double>> batch;
        for (std::size_t b = 0; b < B; ++b)
          batch.push_back({queries[b].row(0), &keys[b], &values[b], &masks[b]});
        auto att = tape.attention(batch, net.attn, grads ? &grads->attn : nullptr);
        auto cos = tape.cosine_rows(att, heads);
        auto x = tape.concat_cols({att, tape.constant(heads), cos});
        auto z1 = tape.dense(x, net.l1, grads ? &grads->l1 : nullptr);
        Rng drop(77);
        auto h = tape.dropout(tape.relu(z1), 0.3, true, drop);
        auto p = tape.softmax_rows(tape.dense(h, net.l2, grads ? &grads->l2 : nullptr));
        auto loss = tape.weighted_nll(p, labels, weights);
        if (min_preact) {
          *min_preact = INFINITY;
          for (double v : tape.value(z1).values()) *min_preact = std::min(*min_preact, std::abs(v));
        }
        if (grads) tape.backward(loss);
        return tape.value(loss)(0, 0);
      };
      MiniNet grads = net;
      grads.attn.zero();
      grads.l1.zero();
      grads.l2.zero();
      double margin = 0;
      run(&grads, &margin);
      if (margin < 1e-2) continue;  // finite differences would straddle a ReLU kink
      auto res = testing::check_gradients(net, grads, [&] { return run(nullptr, nullptr); });
      INFO("tensor " << res.worst_tensor << " index " << res.worst_index << " analytic "
                     << res.worst_analytic << " numeric " << res.worst_numeric);
      CHECK(res.max_relative_error < 1e-4);
    }
  }
}

TEST_SUITE("adam") {
  struct Scalar {
    std::vector<float> w{0.0f};
    template <typename F>
    void for_each_tensor(F&& f) { f(std::span<float>(w)); }
    template <typename F>
    void for_each_tensor(F&& f) const { f(std::span<const float>(w)); }
  };

  TEST_CASE("zero gradient leaves parameters unchanged") {
    Scalar p{{1.5f}}, g{{0.0f}};
    OptimizerState st;
    for (int i = 0; i < 5; ++i) adam_step(p, g, st, 0.1);
    CHECK(p.w[0] == 1.5f);
    CHECK(st.step == 5);
  }
  TEST_CASE("first step moves by lr against the gradient sign") {
    for (float g0 : {1e-3f, -0.5f, 250.0f}) {
      Scalar p{{0.0f}}, g{{g0}};
      OptimizerState st;
      adam_step(p, g, st, 0.01);
      CHECK(p.w[0] == doctest::Approx(g0 > 0 ? -0.01 : 0.01).epsilon(1e-4));
    }
  }
  TEST_CASE("converges on a quadratic") {
    Scalar p{{0.0f}}, g{{0.0f}};
    OptimizerState st;
    for (int i = 0; i < 200; ++i) {
      g.w[0] = 2.0f * (p.w[0] - 3.0f);
      adam_step(p, g, st, 0.1);
    }
    CHECK(std::abs(p.w[0] - 3.0f) < 0.05);
  }
  TEST_CASE("non-positive learning rate is rejected") {
    Scalar p, g;
    OptimizerState st;
    CHECK_THROWS_AS(adam_step(p, g, st, 0.0), ParameterError);
  }
}
