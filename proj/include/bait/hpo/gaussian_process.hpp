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

#ifndef BAIT_HPO_GAUSSIAN_PROCESS_HPP_
#define BAIT_HPO_GAUSSIAN_PROCESS_HPP_

#include <cstddef>
#include <span>
#include <vector>

namespace bait::hpo {

// Isotropic Matérn 5/2 kernel plus observation noise.
struct KernelParams {
  double length_scale = 0.2;
  double signal_variance = 1.0;
  double noise_variance = 1e-6;

  // ParameterError unless all three are finite and positive.
  void validate() const;
};

// s² (1 + √5 r/ℓ + 5r²/(3ℓ²)) exp(−√5 r/ℓ) for Euclidean distance r.
double matern52(std::span<const double> a, std::span<const double> b, const KernelParams& kernel);

struct GpState {
  std::vector<std::vector<double>> points;  // training inputs
  std::vector<double> centered;             // objectives minus prior_mean
  double prior_mean = 0.0;                  // mean of the objectives
  KernelParams kernel;
  double jitter = 0.0;             // diagonal added beyond the noise to factorize
  std::vector<double> cholesky;    // lower factor of K + (noise + jitter) I, row-major n x n
  std::vector<double> alpha;       // (K + σ²I)^-1 centered
  double log_marginal_likelihood = 0.0;

  std::size_t size() const { return points.size(); }
  std::size_t dim() const { return points.empty() ? 0 : points.front().size(); }
};

// Exact GP conditioning under fixed kernel parameters. Jitter grows from
// 1e-10 s² to 1e-4 s² when the Gram matrix does not factorize; beyond that a
// NumericalError. ParameterError for no points, ragged points or non-finite
// objectives.
GpState gp_fit(const std::vector<std::vector<double>>& points, std::span<const double> objectives,
               const KernelParams& kernel);

// Kernel grid searched by gp_fit_auto: length scales (multiplied by √dim),
// signal variances (multiplied by the objective variance) and noise ratios
// (multiplied by the signal variance).
struct KernelGrid {
  std::vector<double> length_scales = {0.05, 0.1, 0.2, 0.4, 0.8, 1.6};
  std::vector<double> signal_scales = {0.5, 1.0, 2.0};
  std::vector<double> noise_ratios = {1e-6, 1e-3, 1e-1};
};

// gp_fit with the grid point of highest log marginal likelihood (first in
// grid order on ties).
GpState gp_fit_auto(const std::vector<std::vector<double>>& points, std::span<const double> objectives,
                    const KernelGrid& grid = {});

struct Posterior {
  double mean = 0.0;
  double variance = 0.0;  // latent function variance, clamped at 0
};

// DimensionError when the query does not match the training inputs.
Posterior gp_posterior(const GpState& state, std::span<const double> query);

}  // namespace bait::hpo

#endif  // BAIT_HPO_GAUSSIAN_PROCESS_HPP_
