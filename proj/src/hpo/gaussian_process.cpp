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

#include "bait/hpo/gaussian_process.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "bait/errors.hpp"

namespace bait::hpo {
namespace {

// In-place Cholesky of a row-major symmetric matrix; false if not positive definite.
bool cholesky(std::vector<double>& a, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    double d = a[j * n + j];
    for (std::size_t k = 0; k < j; ++k) d -= a[j * n + k] * a[j * n + k];
    if (!(d > 0.0) || !std::isfinite(d)) return false;
    const double l = std::sqrt(d);
    a[j * n + j] = l;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = a[i * n + j];
      for (std::size_t k = 0; k < j; ++k) s -= a[i * n + k] * a[j * n + k];
      a[i * n + j] = s / l;
    }
    for (std::size_t k = j + 1; k < n; ++k) a[j * n + k] = 0.0;
  }
  return true;
}

// Solves L x = b in place.
void forward_solve(const std::vector<double>& l, std::size_t n, std::vector<double>& b) {
  for (std::size_t i = 0; i < n; ++i) {
    double s = b[i];
    for (std::size_t k = 0; k < i; ++k) s -= l[i * n + k] * b[k];
    b[i] = s / l[i * n + i];
  }
}

// Solves Lᵀ x = b in place.
void backward_solve(const std::vector<double>& l, std::size_t n, std::vector<double>& b) {
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= l[k * n + i] * b[k];
    b[i] = s / l[i * n + i];
  }
}

}  // namespace

void KernelParams::validate() const {
  for (double v : {length_scale, signal_variance, noise_variance}) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw ParameterError("kernel length scale, signal variance and noise variance must be positive");
    }
  }
}

double matern52(std::span<const double> a, std::span<const double> b, const KernelParams& kernel) {
  if (a.size() != b.size()) throw DimensionError("kernel inputs differ in dimension");
  double sq = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sq += (a[i] - b[i]) * (a[i] - b[i]);
  const double s = std::sqrt(5.0 * sq) / kernel.length_scale;
  return kernel.signal_variance * (1.0 + s + s * s / 3.0) * std::exp(-s);
}

GpState gp_fit(const std::vector<std::vector<double>>& points, std::span<const double> objectives,
               const KernelParams& kernel) {
  kernel.validate();
  const std::size_t n = points.size();
  if (n == 0) throw ParameterError("a Gaussian process needs at least one observation");
  if (objectives.size() != n) throw DimensionError("points and objectives differ in count");
  for (const auto& p : points) {
    if (p.size() != points.front().size()) throw DimensionError("training points differ in dimension");
  }
  GpState st;
  st.points = points;
  st.kernel = kernel;
  for (double y : objectives) {
    if (!std::isfinite(y)) throw ParameterError("objectives must be finite");
    st.prior_mean += y;
  }
  st.prior_mean /= static_cast<double>(n);
  for (double y : objectives) st.centered.push_back(y - st.prior_mean);

  std::vector<double> gram(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) gram[i * n + j] = gram[j * n + i] = matern52(points[i], points[j], kernel);
  }
  for (double jitter = 0.0;; jitter = jitter == 0.0 ? 1e-10 * kernel.signal_variance : jitter * 10.0) {
    if (jitter > 1e-4 * kernel.signal_variance * (1.0 + 1e-9)) {
      throw NumericalError("kernel Gram matrix is not positive definite even with jitter");
    }
    st.cholesky = gram;
    for (std::size_t i = 0; i < n; ++i) st.cholesky[i * n + i] += kernel.noise_variance + jitter;
    if (cholesky(st.cholesky, n)) {
      st.jitter = jitter;
      break;
    }
  }
  st.alpha = st.centered;
  forward_solve(st.cholesky, n, st.alpha);
  double quad = 0.0;
  for (double v : st.alpha) quad += v * v;
  backward_solve(st.cholesky, n, st.alpha);
  double log_det = 0.0;
  for (std::size_t i = 0; i < n; ++i) log_det += std::log(st.cholesky[i * n + i]);
  st.log_marginal_likelihood =
      -0.5 * quad - log_det - 0.5 * static_cast<double>(n) * std::log(2.0 * std::numbers::pi);
  return st;
}

GpState gp_fit_auto(const std::vector<std::vector<double>>& points, std::span<const double> objectives,
                    const KernelGrid& grid) {
  if (points.empty()) throw ParameterError("a Gaussian process needs at least one observation");
  double mean = 0.0;
  for (double y : objectives) mean += y;
  mean /= static_cast<double>(objectives.size());
  double var = 0.0;
  for (double y : objectives) var += (y - mean) * (y - mean);
  var /= static_cast<double>(objectives.size());
  const double base_signal = std::max(var, 1e-6);
  const double base_length = std::sqrt(static_cast<double>(std::max<std::size_t>(1, points.front().size())));

  GpState best;
  bool have = false;
  for (double ls : grid.length_scales) {
    for (double ss : grid.signal_scales) {
      for (double nr : grid.noise_ratios) {
        const KernelParams kernel{ls * base_length, ss * base_signal, nr * ss * base_signal};
        GpState st;
        try {
          st = gp_fit(points, objectives, kernel);
        } catch (const NumericalError&) {
          continue;
        }
        if (!have || st.log_marginal_likelihood > best.log_marginal_likelihood) {
          best = std::move(st);
          have = true;
        }
      }
    }
  }
  if (!have) throw NumericalError("no kernel in the grid gives a positive definite Gram matrix");
  return best;
}

Posterior gp_posterior(const GpState& state, std::span<const double> query) {
  const std::size_t n = state.size();
  if (query.size() != state.dim()) {
    throw DimensionError("query has " + std::to_string(query.size()) + " coordinates, model expects " +
                         std::to_string(state.dim()));
  }
  std::vector<double> k(n);
  for (std::size_t i = 0; i < n; ++i) k[i] = matern52(state.points[i], query, state.kernel);
  Posterior post;
  post.mean = state.prior_mean;
  for (std::size_t i = 0; i < n; ++i) post.mean += k[i] * state.alpha[i];
  forward_solve(state.cholesky, n, k);
  double explained = 0.0;
  for (double v : k) explained += v * v;
  post.variance = std::max(0.0, state.kernel.signal_variance - explained);
  return post;
}

}  // namespace bait::hpo
