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

#include <atomic>
#include <cassert>

#include "bait/simd/kernels.hpp"

namespace bait::simd {

namespace {

bool cpu_has(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return true;
    case Isa::kAvx2:
#if defined(BAIT_HAVE_AVX2)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Isa::kNeon:
#if defined(BAIT_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Isa probe() {
  if (cpu_has(Isa::kAvx2)) return Isa::kAvx2;
  if (cpu_has(Isa::kNeon)) return Isa::kNeon;
  return Isa::kScalar;
}

std::atomic<Isa>& selected() {
  static std::atomic<Isa> isa{probe()};
  return isa;
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::kScalar: return "scalar";
    case Isa::kAvx2: return "avx2";
    case Isa::kNeon: return "neon";
  }
  return "unknown";
}

Isa detected_isa() { return probe(); }

Isa active_isa() { return selected().load(std::memory_order_relaxed); }

bool force_isa(Isa isa) {
  if (!cpu_has(isa)) return false;
  selected().store(isa, std::memory_order_relaxed);
  return true;
}

#if defined(BAIT_HAVE_AVX2)
#define BAIT_DISPATCH_AVX2(call) \
  case Isa::kAvx2:               \
    return avx2::call;
#else
#define BAIT_DISPATCH_AVX2(call)
#endif

#if defined(BAIT_HAVE_NEON)
#define BAIT_DISPATCH_NEON(call) \
  case Isa::kNeon:               \
    return neon::call;
#else
#define BAIT_DISPATCH_NEON(call)
#endif

#define BAIT_DISPATCH(call)   \
  switch (active_isa()) {     \
    BAIT_DISPATCH_AVX2(call)  \
    BAIT_DISPATCH_NEON(call)  \
    default:                  \
      return scalar::call;    \
  }

double dot(std::span<const float> x, std::span<const float> y) {
  assert(x.size() == y.size());
  BAIT_DISPATCH(dot(x.data(), y.data(), x.size()))
}

double dot(std::span<const double> x, std::span<const double> y) {
  assert(x.size() == y.size());
  BAIT_DISPATCH(dot(x.data(), y.data(), x.size()))
}

void axpy(float a, std::span<const float> x, std::span<float> y) {
  assert(x.size() == y.size());
  BAIT_DISPATCH(axpy(a, x.data(), y.data(), x.size()))
}

void axpy(double a, std::span<const double> x, std::span<double> y) {
  assert(x.size() == y.size());
  BAIT_DISPATCH(axpy(a, x.data(), y.data(), x.size()))
}

void scale_add(float a, std::span<const float> x, float b, std::span<float> y) {
  assert(x.size() == y.size());
  BAIT_DISPATCH(scale_add(a, x.data(), b, y.data(), x.size()))
}

}  // namespace bait::simd
