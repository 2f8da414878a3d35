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

// aarch64 variant. Same rounding contract as the AVX2 file: elementwise kernels
// avoid fused multiply-add, dot widens to double.

#include <arm_neon.h>

#include "bait/simd/kernels.hpp"

namespace bait::simd::neon {

double dot(const float* x, const float* y, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    float32x4_t xv = vld1q_f32(x + i);
    float32x4_t yv = vld1q_f32(y + i);
    acc0 = vfmaq_f64(acc0, vcvt_f64_f32(vget_low_f32(xv)), vcvt_f64_f32(vget_low_f32(yv)));
    acc1 = vfmaq_f64(acc1, vcvt_high_f64_f32(xv), vcvt_high_f64_f32(yv));
  }
  double acc = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) acc += static_cast<double>(x[i]) * static_cast<double>(y[i]);
  return acc;
}

double dot(const double* x, const double* y, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(x + i), vld1q_f64(y + i));
    acc1 = vfmaq_f64(acc1, vld1q_f64(x + i + 2), vld1q_f64(y + i + 2));
  }
  double acc = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

void axpy(float a, const float* x, float* y, std::size_t n) {
  const float32x4_t av = vdupq_n_f32(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    vst1q_f32(y + i, vaddq_f32(vld1q_f32(y + i), vmulq_f32(av, vld1q_f32(x + i))));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  const float64x2_t av = vdupq_n_f64(a);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    vst1q_f64(y + i, vaddq_f64(vld1q_f64(y + i), vmulq_f64(av, vld1q_f64(x + i))));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

void scale_add(float a, const float* x, float b, float* y, std::size_t n) {
  const float32x4_t av = vdupq_n_f32(a);
  const float32x4_t bv = vdupq_n_f32(b);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    float32x4_t ax = vmulq_f32(av, vld1q_f32(x + i));
    float32x4_t by = vmulq_f32(bv, vld1q_f32(y + i));
    vst1q_f32(y + i, vaddq_f32(ax, by));
  }
  for (; i < n; ++i) y[i] = a * x[i] + b * y[i];
}

}  // namespace bait::simd::neon
