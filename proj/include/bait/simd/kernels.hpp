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

// Vector kernels used by the dense and attention layers. Each entry point has
// a scalar reference implementation and, where the build and the CPU allow it,
// an AVX2 (x86-64) or NEON (aarch64) variant. The variant is picked once at
// startup; force_isa() overrides it for equivalence tests and benchmarks.
//
// Reductions accumulate in double regardless of the element type.

#ifndef BAIT_SIMD_KERNELS_HPP_
#define BAIT_SIMD_KERNELS_HPP_

#include <cstddef>
#include <span>
#include <string_view>

namespace bait::simd {

enum class Isa { kScalar, kAvx2, kNeon };

std::string_view isa_name(Isa isa);

// Best ISA supported by both this build and the running CPU.
Isa detected_isa();

// ISA used by the dispatching entry points below.
Isa active_isa();

// Returns false (and leaves the selection unchanged) if `isa` is unavailable.
bool force_isa(Isa isa);

// Lengths must match; checked by the callers, asserted here.
double dot(std::span<const float> x, std::span<const float> y);
double dot(std::span<const double> x, std::span<const double> y);

// y += a * x
void axpy(float a, std::span<const float> x, std::span<float> y);
void axpy(double a, std::span<const double> x, std::span<double> y);

// y = a * x + b * y, elementwise; used by the optimizer moment updates.
void scale_add(float a, std::span<const float> x, float b, std::span<float> y);

namespace scalar {
double dot(const float* x, const float* y, std::size_t n);
double dot(const double* x, const double* y, std::size_t n);
void axpy(float a, const float* x, float* y, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
void scale_add(float a, const float* x, float b, float* y, std::size_t n);
}  // namespace scalar

#if defined(BAIT_HAVE_AVX2)
namespace avx2 {
double dot(const float* x, const float* y, std::size_t n);
double dot(const double* x, const double* y, std::size_t n);
void axpy(float a, const float* x, float* y, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
void scale_add(float a, const float* x, float b, float* y, std::size_t n);
}  // namespace avx2
#endif

#if defined(BAIT_HAVE_NEON)
namespace neon {
double dot(const float* x, const float* y, std::size_t n);
double dot(const double* x, const double* y, std::size_t n);
void axpy(float a, const float* x, float* y, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
void scale_add(float a, const float* x, float b, float* y, std::size_t n);
}  // namespace neon
#endif

}  // namespace bait::simd

#endif  // BAIT_SIMD_KERNELS_HPP_
