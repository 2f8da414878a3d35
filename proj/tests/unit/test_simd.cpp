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

// Scalar reference vs the runtime-selected vector kernels.

#include <doctest.h>

#include <cmath>
#include <vector>

#include "bait/rng.hpp"
#include "bait/simd/kernels.hpp"

using namespace bait;

namespace {

template <typename T>
std::vector<T> random_vector(Rng& rng, std::size_t n) {
  std::vector<T> v(n);
  for (auto& x : v) x = static_cast<T>(2.0 * rng.uniform() - 1.0);
  return v;
}

// Every length up to a few vector widths, plus a large one, exercises the
// main loop and the scalar tail.
const std::size_t kLengths[] = {0, 1, 3, 4, 7, 8, 9, 15, 16, 17, 31, 33, 384, 768, 1921};

}  // namespace

TEST_CASE("detected isa is usable") {
  const auto isa = simd::detected_isa();
  CHECK(simd::force_isa(isa));
  CHECK(simd::active_isa() == isa);
  MESSAGE("kernels: " << simd::isa_name(isa));
}

TEST_CASE("vector dot matches scalar reference") {
  Rng rng(11);
  for (std::size_t n : kLengths) {
    auto x = random_vector<float>(rng, n);
    auto y = random_vector<float>(rng, n);
    const double ref = simd::scalar::dot(x.data(), y.data(), n);
    const double got = simd::dot(std::span<const float>(x), std::span<const float>(y));
    CHECK(got == doctest::Approx(ref).epsilon(1e-12));
    auto xd = random_vector<double>(rng, n);
    auto yd = random_vector<double>(rng, n);
    const double refd = simd::scalar::dot(xd.data(), yd.data(), n);
    CHECK(simd::dot(std::span<const double>(xd), std::span<const double>(yd)) ==
          doctest::Approx(refd).epsilon(1e-12));
  }
}

TEST_CASE("vector axpy and scale_add are bitwise equal to scalar reference") {
  Rng rng(12);
  for (std::size_t n : kLengths) {
    auto x = random_vector<float>(rng, n);
    auto y = random_vector<float>(rng, n);
    auto y_ref = y;
    simd::scalar::axpy(0.37f, x.data(), y_ref.data(), n);
    simd::axpy(0.37f, std::span<const float>(x), std::span<float>(y));
    CHECK(y == y_ref);

    auto z = random_vector<float>(rng, n);
    auto z_ref = z;
    simd::scalar::scale_add(0.1f, x.data(), 0.9f, z_ref.data(), n);
    simd::scale_add(0.1f, std::span<const float>(x), 0.9f, std::span<float>(z));
    CHECK(z == z_ref);

    auto xd = random_vector<double>(rng, n);
    auto yd = random_vector<double>(rng, n);
    auto yd_ref = yd;
    simd::scalar::axpy(-1.25, xd.data(), yd_ref.data(), n);
    simd::axpy(-1.25, std::span<const double>(xd), std::span<double>(yd));
    CHECK(yd == yd_ref);
  }
}

TEST_CASE("forcing scalar routes the dispatcher to the reference") {
  const auto original = simd::active_isa();
  REQUIRE(simd::force_isa(simd::Isa::kScalar));
  Rng rng(13);
  auto x = random_vector<float>(rng, 100);
  auto y = random_vector<float>(rng, 100);
  CHECK(simd::dot(std::span<const float>(x), std::span<const float>(y)) ==
        simd::scalar::dot(x.data(), y.data(), 100));
  simd::force_isa(original);
}
